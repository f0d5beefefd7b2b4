#include "ems/predicates.hpp"

#include <functional>

namespace ems {

int orientation(const std::vector<Point>& pts) {
    if (pts.empty()) throw Error("dimension", "empty point list");
    const int d = pts[0].dim();
    if (static_cast<int>(pts.size()) != d + 1)
        throw Error("dimension", "orientation needs d+1 points");
    for (const auto& p : pts)
        if (p.dim() != d) throw Error("dimension", "mixed dimensions");
    Matrix m(d, Vec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = pts[i + 1].x[j] - pts[0].x[j];
    return sign(determinant(std::move(m)));
}

Vec barycentric(const Point& p, const std::vector<Point>& simplex) {
    const int d = p.dim();
    if (static_cast<int>(simplex.size()) != d + 1)
        throw Error("dimension", "simplex needs d+1 vertices");
    Matrix a(d + 1, Vec(d + 1));
    Vec b(d + 1);
    for (int j = 0; j <= d; ++j) {
        for (int i = 0; i < d; ++i) a[i][j] = simplex[j].x[i];
        a[d][j] = 1;
    }
    for (int i = 0; i < d; ++i) b[i] = p.x[i];
    b[d] = 1;
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) throw Error("degenerate-simplex", "affinely dependent simplex vertices");
    return *sol;
}

Location in_simplex(const Point& p, const std::vector<Point>& simplex) {
    Vec lambda = barycentric(p, simplex);
    bool zero = false;
    for (const Rat& l : lambda) {
        int s = sign(l);
        if (s < 0) return Location::OUTSIDE;
        if (s == 0) zero = true;
    }
    return zero ? Location::BOUNDARY : Location::INTERIOR;
}

Hyperplane hyperplane_through(const std::vector<Point>& pts) {
    if (pts.empty()) throw Error("dimension", "empty point list");
    const int d = pts[0].dim();
    if (static_cast<int>(pts.size()) != d)
        throw Error("dimension", "hyperplane needs d points in R^d");
    // Normal components are cofactors of the (d-1) x d difference matrix.
    Matrix diff(d - 1, Vec(d));
    for (int i = 0; i < d - 1; ++i)
        for (int j = 0; j < d; ++j) diff[i][j] = pts[i + 1].x[j] - pts[0].x[j];
    Vec normal(d);
    bool nonzero = false;
    for (int j = 0; j < d; ++j) {
        Matrix minor(d - 1, Vec(d - 1));
        for (int r = 0; r < d - 1; ++r) {
            int cc = 0;
            for (int c = 0; c < d; ++c) {
                if (c == j) continue;
                minor[r][cc++] = diff[r][c];
            }
        }
        normal[j] = (j % 2 == 0 ? 1 : -1) * determinant(std::move(minor));
        if (sign(normal[j]) != 0) nonzero = true;
    }
    if (!nonzero) throw Error("degenerate-simplex", "hyperplane points affinely dependent");
    return Hyperplane{normal, dot(normal, pts[0].x)};
}

SimplexTester::SimplexTester(const PointSet& pts, const IdSet& simplex) {
    const int d = pts.dim();
    if (static_cast<int>(simplex.size()) != d + 1)
        throw Error("dimension", "simplex needs d+1 vertices");
    for (int i = 0; i <= d; ++i) {
        std::vector<Point> face;
        for (int j = 0; j <= d; ++j)
            if (j != i) face.push_back(pts.by_id(simplex[j]));
        Hyperplane h = hyperplane_through(face);
        const Point& opp = pts.by_id(simplex[i]);
        Rat v = dot(h.normal, opp.x) - h.offset;
        int s = sign(v);
        if (s == 0) throw Error("degenerate-simplex", "flat simplex");
        if (s < 0) {
            for (Rat& c : h.normal) c = -c;
            h.offset = -h.offset;
        }
        facets_.push_back(std::move(h));
    }
}

Location SimplexTester::locate(const Point& p) const {
    bool zero = false;
    for (const auto& h : facets_) {
        int s = sign(dot(h.normal, p.x) - h.offset);
        if (s < 0) return Location::OUTSIDE;
        if (s == 0) zero = true;
    }
    return zero ? Location::BOUNDARY : Location::INTERIOR;
}

GeneralPositionResult general_position_check(const PointSet& pts, size_t cap) {
    const int d = pts.dim();
    const size_t n = pts.size();
    if (n > cap) throw Error("budget", "general_position_check gated to n <= cap");
    if (n < static_cast<size_t>(d) + 1) return {};
    std::vector<size_t> idx(d + 1);
    GeneralPositionResult res;
    std::function<bool(int, size_t)> rec = [&](int k, size_t start) {
        if (k == d + 1) {
            std::vector<Point> sub;
            for (int i = 0; i <= d; ++i) sub.push_back(pts[idx[i]]);
            if (orientation(sub) == 0) {
                res.ok = false;
                for (int i = 0; i <= d; ++i) res.violating.push_back(pts[idx[i]].id);
                std::sort(res.violating.begin(), res.violating.end());
                return true;
            }
            return false;
        }
        for (size_t i = start; i + (d - k) < n; ++i) {
            idx[k] = i;
            if (rec(k + 1, i + 1)) return true;
        }
        return false;
    };
    rec(0, 0);
    return res;
}

Rat simplex_volume(const std::vector<Point>& simplex) {
    const int d = simplex[0].dim();
    if (static_cast<int>(simplex.size()) != d + 1)
        throw Error("dimension", "simplex needs d+1 vertices");
    Matrix m(d, Vec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = simplex[i + 1].x[j] - simplex[0].x[j];
    Rat det = determinant(std::move(m));
    if (sign(det) < 0) det = -det;
    Rat fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    return det / fact;
}

Rat simplex_volume(const PointSet& pts, const IdSet& simplex) {
    std::vector<Point> verts;
    for (int id : simplex) verts.push_back(pts.by_id(id));
    return simplex_volume(verts);
}

}  // namespace ems
