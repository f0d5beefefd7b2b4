#pragma once

#include <vector>

#include "ems/hull.hpp"
#include "ems/instance.hpp"
#include "ems/point.hpp"
#include "ems/predicates.hpp"

namespace emstest {

inline ems::Point pt(int id, std::vector<long> coords) {
    ems::Point p;
    p.id = id;
    for (long c : coords) p.x.push_back(c);
    return p;
}

inline ems::Point ptq(int id, std::vector<const char*> coords) {
    ems::Point p;
    p.id = id;
    for (const char* c : coords) p.x.push_back(ems::rat_from_string(c));
    return p;
}

inline ems::PointSet random_set(size_t n, int d, uint64_t seed, long box = 1000) {
    ems::GenerateOptions opt;
    opt.box = box;
    return ems::generate_instance("random-ball", n, d, 0, seed, opt).pts;
}

inline ems::PointSet convex_set(size_t n, int d, uint64_t seed) {
    return ems::generate_instance("convex", n, d, 0, seed).pts;
}

// Points with a simplex hull: a big simplex plus interior points.
inline ems::PointSet simplex_hulled(size_t n, int d, uint64_t seed) {
    std::vector<ems::Point> pts;
    long big = 4000;
    for (int i = 0; i <= d; ++i) {
        ems::Point p;
        p.id = i;
        p.x.assign(d, -big / 4);
        if (i > 0) p.x[i - 1] = big;
        pts.push_back(p);
    }
    ems::PointSet inner = random_set(n, d, seed, 100);
    for (const auto& q : inner.points()) {
        if (pts.size() >= n) break;
        ems::Point p = q;
        p.id = static_cast<int>(pts.size());
        pts.push_back(p);
    }
    ems::PointSet s(pts);
    if (!ems::general_position_check(s).ok) return simplex_hulled(n, d, seed + 7777);
    ems::HullSkeleton h = ems::build_hull(s);
    if (h.vertices.size() != static_cast<size_t>(d) + 1)
        return simplex_hulled(n, d, seed + 7777);
    return s;
}

}  // namespace emstest
