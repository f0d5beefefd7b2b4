#include <doctest.h>

#include <algorithm>

#include "ems/combin.hpp"
#include "ems/hull.hpp"
#include "ems/predicates.hpp"
#include "ems/star.hpp"
#include "helpers.hpp"

using namespace ems;
using emstest::pt;

namespace {

bool all_pinned(const SimplicialComplex& k, const IdSet& pin) {
    for (const auto& s : k.top)
        if (!std::includes(s.begin(), s.end(), pin.begin(), pin.end())) return false;
    return true;
}

using emstest::simplex_hulled;

// Independent count for the planar fan: directed angular gaps below pi.
size_t fan_oracle(const PointSet& pts, int p_id) {
    const Point& p = pts.by_id(p_id);
    std::vector<Point> others;
    for (const auto& q : pts.points())
        if (q.id != p_id) others.push_back(q);
    size_t count = 0;
    for (size_t i = 0; i < others.size(); ++i) {
        for (size_t j = 0; j < others.size(); ++j) {
            if (i == j) continue;
            // j is the immediate ccw successor of i if no k lies strictly
            // between them going ccw
            auto cw = [&](const Point& a, const Point& b) {
                return sign((a.x[0] - p.x[0]) * (b.x[1] - p.x[1]) -
                            (a.x[1] - p.x[1]) * (b.x[0] - p.x[0]));
            };
            if (cw(others[i], others[j]) <= 0) continue;   // not below pi
            bool blocked = false;
            for (size_t k = 0; k < others.size() && !blocked; ++k) {
                if (k == i || k == j) continue;
                if (cw(others[i], others[k]) > 0 && cw(others[k], others[j]) > 0)
                    blocked = true;
            }
            if (!blocked) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("star_in_simplex: base cases and formula") {
    for (int d = 2; d <= 4; ++d) {
        PointSet s = simplex_hulled(d + 1, d, 100 + d);
        PinnedComplex pc = star_in_simplex(s, 0);
        CHECK(pc.base.size() == 1);
        CHECK(pc.cert.bound == 1);
    }

    // n=7, d=2: 5 pinned triangles
    PointSet s7 = simplex_hulled(7, 2, 200);
    PinnedComplex pc7 = star_in_simplex(s7, 0);
    CHECK(pc7.cert.bound == 5);
    CHECK(pc7.cert.slack >= 0);
    CHECK(all_pinned(pc7.base, {0}));
    CHECK(validate_complex(pc7.full, s7, true).ok);
}

TEST_CASE("star_in_simplex: random instances meet the certificate") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        for (int d = 2; d <= 4; ++d) {
            size_t n = d + 3 + seed % 9;
            PointSet s = simplex_hulled(n, d, 3000 + 17 * seed + d);
            n = s.size();
            PinnedComplex pc = star_in_simplex(s, 1);
            CHECK(pc.cert.bound ==
                  Rat(static_cast<long>((d - 1) * n) - d * d + 2));
            CHECK(pc.cert.slack >= 0);
            CHECK(all_pinned(pc.base, {1}));
            CHECK(validate_complex(pc.full, s, true).ok);
            // full construction is a triangulation: minimum size law
            CHECK(pc.full.size() >= n - d);
        }
    }
    PointSet notsimplex = emstest::convex_set(8, 3, 301);
    CHECK_THROWS_WITH_AS(star_in_simplex(notsimplex, notsimplex.ids()[0]),
                         doctest::Contains("hull-not-simplex"), Error);
}

TEST_CASE("fan_2d: counts match the angular-scan oracle") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        size_t n = 3 + seed % 8;
        PointSet s = emstest::random_set(n, 2, 4000 + seed);
        HullSkeleton h = build_hull(s);
        for (const auto& p : s.points()) {
            PinnedComplex pc = fan_2d(s, p.id);
            CHECK(pc.cert.bound == Rat(static_cast<long>(n) - 2));
            CHECK(pc.cert.slack >= 0);
            CHECK(all_pinned(pc.base, {p.id}));
            CHECK(pc.base.size() == fan_oracle(s, p.id));
            if (h.is_vertex(p.id)) {
                CHECK(pc.base.size() == n - 2);   // one gap of at least pi
            } else {
                CHECK(pc.base.size() == n - 1);   // full turn
            }
            CHECK(validate_complex(pc.base, s).ok);
        }
    }
}

TEST_CASE("star_3d: simplex and formula cases") {
    // n=4, p a vertex with degree 3: single tetrahedron
    PointSet s4 = emstest::random_set(4, 3, 5001);
    PinnedComplex pc4 = star_3d(s4, 0);
    CHECK(pc4.base.size() == 1);
    CHECK(pc4.cert.bound == 1);

    // n=5, p interior of a simplex hull: 4 pinned tetrahedra
    PointSet s5 = simplex_hulled(5, 3, 5002);
    PinnedComplex pc5 = star_3d(s5, 4);
    CHECK(pc5.cert.bound == Rat(2 * 5 - 6));
    CHECK(pc5.base.size() == 4);
    CHECK(validate_complex(pc5.full, s5, true).ok);
}

TEST_CASE("star_3d: random instances, interior and hull pins") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        size_t n = 8 + seed;
        PointSet s = emstest::random_set(n, 3, 5100 + seed);
        HullSkeleton h = build_hull(s);
        SkeletonGraph g = one_skeleton(h);
        for (const auto& p : s.points()) {
            PinnedComplex pc = star_3d(s, p.id);
            if (h.is_vertex(p.id)) {
                CHECK(pc.cert.bound ==
                      Rat(2 * static_cast<long>(n) - g.degree.at(p.id) - 4));
            } else {
                CHECK(pc.cert.bound == Rat(2 * static_cast<long>(n) - 6));
            }
            CHECK(pc.cert.slack >= 0);
            CHECK(all_pinned(pc.base, {p.id}));
            CHECK(validate_complex(pc.full, s, true).ok);
        }
    }
}

TEST_CASE("star_highd: d=4 halving, projection sizes, certificate") {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        size_t n = 21 + seed * 2;
        PointSet s = emstest::random_set(n, 4, 5200 + seed);
        int p = static_cast<int>(seed) % static_cast<int>(n);
        PinnedComplex pc = star_highd(s, p);
        CHECK(all_pinned(pc.base, {p}));
        CHECK(pc.cert.slack >= 0);
        CHECK_FALSE(pc.cert.asymptotic_met);
        CHECK(validate_complex(pc.base, s).ok);
        // cone sizes: both sides triangulated, so at least (n-1) - 2(d-1)
        CHECK(pc.base.size() >= n - 1 - 2 * 3);
    }
}

TEST_CASE("star_subset: r = d-1 lifts a planar fan") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        PointSet s = emstest::random_set(7, 3, 5300 + seed);
        IdSet x = {0, 1};
        PinnedComplex pc = star_subset(s, x);
        CHECK(pc.cert.bound == Rat(7 - 3));
        CHECK(pc.cert.slack >= 0);
        CHECK(all_pinned(pc.base, x));
        CHECK(validate_complex(pc.base, s).ok);
    }
}

TEST_CASE("star_subset: r = d-2 gate and formula in d=4") {
    int hits = 0, extremal = 0;
    for (uint64_t seed = 1; seed <= 10 && hits < 4; ++seed) {
        PointSet s = emstest::random_set(16, 4, 5400 + seed);
        for (int a = 0; a < 6 && hits < 4; ++a) {
            for (int b = a + 1; b < 6 && hits < 4; ++b) {
                IdSet x = {a, b};
                if (pin_projects_extremal(s, x)) {
                    ++extremal;
                    CHECK_THROWS_WITH_AS(star_subset(s, x),
                                         doctest::Contains("pin-extremal"), Error);
                    continue;
                }
                PinnedComplex pc = star_subset(s, x);
                ++hits;
                CHECK(pc.cert.bound == Rat(2 * 16 - 2 * 4 - 8));
                CHECK(pc.cert.slack >= 0);
                CHECK(all_pinned(pc.base, x));
                CHECK(validate_complex(pc.base, s).ok);
            }
        }
    }
    CHECK(hits >= 1);
}

TEST_CASE("projection criterion: extremal iff the pin spans a hull face") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (int d = 4; d <= 5; ++d) {
            PointSet s = emstest::random_set(12, d, 5500 + seed * 3 + d);
            HullSkeleton h = build_hull(s);
            IdSet ids = s.ids();
            for_each_combination(ids.size(), d - 2, [&](const std::vector<size_t>& idx) {
                IdSet x;
                for (size_t i : idx) x.push_back(ids[i]);
                CHECK(pin_projects_extremal(s, x) == is_face_of_hull(x, h));
            });
        }
    }
}

TEST_CASE("star_subset: r <= d-3 in d=5 collapses to a 4-dimensional star") {
    PointSet s = emstest::random_set(23, 5, 5600);
    IdSet x = {0, 2};
    PinnedComplex pc = star_subset(s, x);
    CHECK(all_pinned(pc.base, x));
    CHECK(pc.cert.slack >= 0);
    CHECK(validate_complex(pc.base, s).ok);
}
