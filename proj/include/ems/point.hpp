#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ems/error.hpp"
#include "ems/rational.hpp"

namespace ems {

struct Point {
    int id = -1;
    Vec x;

    int dim() const { return static_cast<int>(x.size()); }
};

inline bool same_coords(const Point& a, const Point& b) { return a.x == b.x; }

// Sorted vertex-id set; the representation of simplices throughout.
using IdSet = std::vector<int>;

inline IdSet make_idset(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

// Immutable collection of points with id lookup. Ids are stable and unique;
// positions are exact rationals of a fixed dimension.
class PointSet {
  public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
        for (size_t i = 0; i < pts_.size(); ++i) {
            if (!pts_[i].x.empty() && pts_[i].x.size() != pts_[0].x.size())
                throw Error("dimension", "mixed point dimensions in set");
            if (!idx_.emplace(pts_[i].id, i).second)
                throw Error("duplicate", "duplicate point id " + std::to_string(pts_[i].id));
        }
    }

    int dim() const { return pts_.empty() ? 0 : pts_[0].dim(); }
    size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }

    const Point& operator[](size_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }

    bool has(int id) const { return idx_.count(id) != 0; }

    const Point& by_id(int id) const {
        auto it = idx_.find(id);
        if (it == idx_.end())
            throw Error("unknown-id", "no point with id " + std::to_string(id));
        return pts_[it->second];
    }

    IdSet ids() const {
        IdSet out;
        out.reserve(pts_.size());
        for (const auto& p : pts_) out.push_back(p.id);
        std::sort(out.begin(), out.end());
        return out;
    }

    PointSet subset(const IdSet& ids) const {
        std::vector<Point> sub;
        sub.reserve(ids.size());
        for (int id : ids) sub.push_back(by_id(id));
        return PointSet(std::move(sub));
    }

  private:
    std::vector<Point> pts_;
    std::map<int, size_t> idx_;
};

struct Hyperplane {
    Vec normal;   // not the zero vector
    Rat offset;   // plane = {x : normal . x = offset}
};

struct AffineFlat {
    Point basepoint;
    std::vector<Vec> directions;  // linearly independent

    int rank() const { return static_cast<int>(directions.size()); }
};

inline Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace ems
