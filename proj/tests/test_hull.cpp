#include <doctest.h>

#include <algorithm>
#include <set>

#include "ems/combin.hpp"
#include "ems/hull.hpp"
#include "helpers.hpp"

using namespace ems;
using emstest::pt;

namespace {

// Independent facet enumeration for the cyclic polytope C_d(n): a d-subset
// of parameter-ordered vertices is a facet iff every pair of outside
// elements is separated by an even count of subset elements (Gale's
// evenness condition).
std::set<IdSet> gale_facets(int n, int d) {
    std::set<IdSet> out;
    for_each_combination(n, d, [&](const std::vector<size_t>& idx) {
        std::vector<bool> in(n, false);
        for (size_t i : idx) in[i] = true;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            if (in[a]) continue;
            for (int b = a + 1; b < n && ok; ++b) {
                if (in[b]) continue;
                int between = 0;
                for (int c = a + 1; c < b; ++c)
                    if (in[c]) ++between;
                if (between % 2 != 0) ok = false;
            }
        }
        if (ok) {
            IdSet f;
            for (size_t i : idx) f.push_back(static_cast<int>(i));
            out.insert(f);
        }
    });
    return out;
}

// Exhaustive reference for the planar maximum convex subset, n <= 12.
size_t brute_max_convex(const PointSet& pts) {
    size_t best = std::min<size_t>(pts.size(), 2);
    IdSet ids = pts.ids();
    const size_t n = ids.size();
    for (size_t k = 3; k <= n; ++k) {
        bool found = false;
        for_each_combination(n, k, [&](const std::vector<size_t>& idx) {
            if (found) return;
            IdSet sub;
            for (size_t i : idx) sub.push_back(ids[i]);
            if (in_convex_position(pts.subset(sub))) found = true;
        });
        if (found) best = k;
    }
    return best;
}

}  // namespace

TEST_CASE("build_hull: simplex boundary") {
    for (int d = 2; d <= 5; ++d) {
        PointSet s = emstest::random_set(d + 1, d, 10 + d);
        HullSkeleton h = build_hull(s);
        CHECK(h.facets.size() == static_cast<size_t>(d) + 1);
        CHECK(h.interior.empty());
        CHECK(h.fvector[0] == d + 1);
        for (int m = 0; m < d; ++m)
            CHECK(Int(h.fvector[m]) == binom(d + 1, m + 1));
    }
}

TEST_CASE("build_hull: 5 convex points in d=3 give 6 facets") {
    PointSet s = emstest::convex_set(5, 3, 42);
    HullSkeleton h = build_hull(s);
    CHECK(h.fvector[0] == 5);
    CHECK(h.fvector[2] == 6);   // 2n - 4 tight for simplicial 3-polytopes
}

TEST_CASE("build_hull: all points beneath every facet, ridges pair up") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        PointSet s = emstest::random_set(14, 3, 900 + seed);
        HullSkeleton h = build_hull(s);
        for (const auto& f : h.facets) {
            for (const auto& p : s.points()) {
                if (std::binary_search(f.verts.begin(), f.verts.end(), p.id)) {
                    CHECK(dot(f.plane.normal, p.x) == f.plane.offset);
                } else {
                    CHECK(dot(f.plane.normal, p.x) < f.plane.offset);
                }
            }
        }
        auto rr = h.ridges();
        CHECK(rr.size() * 2 == h.facets.size() * 3);   // each facet has 3 ridges
    }
}

TEST_CASE("build_hull: moment curve d=4 matches Gale evenness") {
    for (int n : {6, 8, 10}) {
        PointSet s = generate_instance("moment-curve", n, 4, 0, 0).pts;
        HullSkeleton h = build_hull(s);
        std::set<IdSet> got;
        for (const auto& f : h.facets) got.insert(f.verts);
        CHECK(got == gale_facets(n, 4));
    }
}

TEST_CASE("build_hull: upper bound sanity against cyclic facet count") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (int d = 3; d <= 4; ++d) {
            PointSet s = emstest::random_set(12, d, 300 + seed * 7 + d);
            HullSkeleton h = build_hull(s);
            size_t cyclic = gale_facets(static_cast<int>(h.fvector[0]), d).size();
            CHECK(h.facets.size() <= cyclic);
            CHECK(satisfies_lower_bound_theorem(d, h.fvector));
        }
    }
}

TEST_CASE("build_hull: d=3 simplicial polytope Euler counts") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        PointSet s = emstest::convex_set(6 + seed % 9, 3, 500 + seed);
        HullSkeleton h = build_hull(s);
        long f0 = h.fvector[0];
        CHECK(h.fvector[1] == 3 * f0 - 6);
        CHECK(h.fvector[2] == 2 * f0 - 4);
        CHECK(h.interior.empty());
    }
}

TEST_CASE("build_hull: error cases") {
    CHECK_THROWS_WITH_AS(build_hull(PointSet({pt(0, {0, 0}), pt(1, {1, 0})})),
                         doctest::Contains("underdetermined"), Error);
    CHECK_THROWS_WITH_AS(
        build_hull(PointSet({pt(0, {0, 0}), pt(1, {1, 0}), pt(2, {2, 0}), pt(3, {3, 0})})),
        doctest::Contains("not-general-position"), Error);
}

TEST_CASE("one_skeleton: simplex is complete, convex d=3 has 3n-6 edges") {
    PointSet s = emstest::random_set(4, 3, 21);
    SkeletonGraph g = one_skeleton(build_hull(s));
    CHECK(g.edges.size() == 6);
    for (const auto& [v, deg] : g.degree) CHECK(deg == 3);

    PointSet c6 = emstest::convex_set(6, 3, 22);
    SkeletonGraph g6 = one_skeleton(build_hull(c6));
    CHECK(g6.edges.size() == 12);
}

TEST_CASE("one_skeleton: many vertices force a degree >= 2d") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        int d = 3;
        PointSet s = emstest::convex_set(d * (d + 1) + 1 + seed, d, 600 + seed);
        SkeletonGraph g = one_skeleton(build_hull(s));
        int maxdeg = 0;
        for (const auto& [v, deg] : g.degree) maxdeg = std::max(maxdeg, deg);
        CHECK(maxdeg >= 2 * d);
    }
}

TEST_CASE("visible_facets: beyond one facet / inside errors / planar vertex view") {
    PointSet s = emstest::random_set(10, 3, 33);
    HullSkeleton h = build_hull(s);

    // push beyond facet 0's centroid along its outward normal
    const Facet& f = h.facets[0];
    Vec c(3, 0);
    for (int id : f.verts)
        for (int k = 0; k < 3; ++k) c[k] += s.by_id(id).x[k] / 3;
    Point outside;
    outside.id = 777;
    outside.x = c;
    for (int k = 0; k < 3; ++k) outside.x[k] += f.plane.normal[k];
    FacetVisibility fv = visible_facets(h, outside);
    CHECK(std::count(fv.visible.begin(), fv.visible.end(), 0) == 1);

    Vec centroid(3, 0);
    for (const auto& p : s.points())
        for (int k = 0; k < 3; ++k) centroid[k] += p.x[k] / Rat(static_cast<long>(s.size()));
    Point inner;
    inner.id = 778;
    inner.x = centroid;
    CHECK_THROWS_WITH_AS(visible_facets(h, inner), doctest::Contains("not-exterior"), Error);

    // d=2: just past a vertex of a triangle, both incident edges visible
    PointSet tri({pt(0, {0, 0}), pt(1, {6, 0}), pt(2, {0, 6})});
    HullSkeleton ht = build_hull(tri);
    FacetVisibility fvt = visible_facets(ht, pt(9, {-1, -1}));
    CHECK(fvt.visible.size() == 2);
}

TEST_CASE("is_face_of_hull: vertices, interior points, edges") {
    PointSet s = emstest::random_set(12, 3, 44);
    HullSkeleton h = build_hull(s);
    REQUIRE_FALSE(h.interior.empty());
    CHECK(is_face_of_hull({h.vertices[0]}, h));
    CHECK_FALSE(is_face_of_hull({h.vertices[0], h.interior[0]}, h));
    CHECK(is_face_of_hull(IdSet(h.facets[0].verts.begin(), h.facets[0].verts.begin() + 2), h));
}

TEST_CASE("in_convex_position and max_convex_subset basics") {
    PointSet c = emstest::convex_set(9, 3, 55);
    CHECK(in_convex_position(c));
    CHECK(max_convex_subset(c, 9) == c.ids());

    PointSet s = emstest::random_set(12, 3, 56);
    HullSkeleton h = build_hull(s);
    if (!h.interior.empty()) CHECK_FALSE(in_convex_position(s));
}

TEST_CASE("max_convex_subset: planar DP matches exhaustive oracle") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        PointSet s = emstest::random_set(9 + seed % 4, 2, 800 + seed, 60);
        IdSet got = max_convex_subset(s, 3);
        CHECK(in_convex_position(s.subset(got)));
        CHECK(got.size() == brute_max_convex(s));
    }
}

TEST_CASE("max_convex_subset: d=3 search matches exhaustive oracle") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        PointSet s = emstest::random_set(10, 3, 850 + seed, 60);
        IdSet got = max_convex_subset(s, 4);
        CHECK(in_convex_position(s.subset(got)));
        CHECK(got.size() == brute_max_convex(s));
    }
}

TEST_CASE("max_convex_subset: unreachable floor throws with best found") {
    PointSet s = emstest::random_set(10, 2, 77, 50);
    size_t truth = brute_max_convex(s);
    CHECK_THROWS_WITH_AS(max_convex_subset(s, truth + 1),
                         doctest::Contains("convex-subset-not-found"), Error);
}
