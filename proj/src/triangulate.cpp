#include "ems/triangulate.hpp"

#include <algorithm>

#include "ems/hull.hpp"
#include "ems/predicates.hpp"

namespace ems {

namespace {

std::vector<Point> gather(const PointSet& pts, const IdSet& ids) {
    std::vector<Point> v;
    v.reserve(ids.size());
    for (int id : ids) v.push_back(pts.by_id(id));
    return v;
}

// Degree the extraction schedule demands at m remaining points: 2d above
// d(d+1), then 2d-j on the j-th shrinking band (improved mode only).
int required_degree(int d, size_t m, bool improved) {
    long dd1 = static_cast<long>(d) * (d + 1);
    if (static_cast<long>(m) > dd1) return 2 * d;
    if (!improved || static_cast<long>(m) <= d + 1) return 0;   // stop
    for (int j = 1; j <= d; ++j)
        if (static_cast<long>(m) * (j + 1) > dd1) return 2 * d - j;
    return 0;
}

}  // namespace

SimplicialComplex insert_point(const SimplicialComplex& t, const PointSet& pts,
                               const Point& p) {
    if (t.has_vertex(p.id))
        throw Error("duplicate", "point " + std::to_string(p.id) + " already in complex");
    for (int id : t.vertexset)
        if (same_coords(pts.by_id(id), p))
            throw Error("duplicate", "point coincides with vertex " + std::to_string(id));

    std::set<IdSet> top = t.top;
    for (const auto& s : t.top) {
        std::vector<Point> sv = gather(pts, s);
        Location loc = in_simplex(p, sv);
        if (loc == Location::BOUNDARY)
            throw Error("not-general-position",
                        "inserted point on a simplex boundary");
        if (loc == Location::INTERIOR) {
            top.erase(s);
            for (size_t drop = 0; drop < s.size(); ++drop) {
                IdSet part;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) part.push_back(s[i]);
                part.push_back(p.id);
                top.insert(make_idset(part));
            }
            return make_complex(t.dim, std::move(top), t.provenance);
        }
    }

    // Exterior: cone over the facets of the current hull visible from p.
    HullSkeleton hull = build_hull(pts.subset(t.vertexset));
    FacetVisibility fv = visible_facets(hull, p);
    for (size_t f : fv.visible) {
        IdSet cone = hull.facets[f].verts;
        cone.push_back(p.id);
        top.insert(make_idset(cone));
    }
    return make_complex(t.dim, std::move(top), t.provenance);
}

SimplicialComplex shelling_triangulation(const PointSet& pts, const std::vector<int>& order) {
    const int d = pts.dim();
    if (order.size() != pts.size())
        throw Error("underdetermined", "shelling order must cover all points");
    if (order.size() < static_cast<size_t>(d) + 1)
        throw Error("underdetermined", "need at least d+1 points");

    std::vector<Point> seed;
    for (int i = 0; i <= d; ++i) seed.push_back(pts.by_id(order[i]));
    if (orientation(seed) == 0)
        throw Error("not-general-position", "first d+1 points are affinely dependent");

    IdSet first;
    for (int i = 0; i <= d; ++i) first.push_back(order[i]);
    SimplicialComplex t = make_complex(d, {make_idset(first)}, "shelling");
    for (size_t i = d + 1; i < order.size(); ++i)
        t = insert_point(t, pts, pts.by_id(order[i]));
    return t;
}

SimplicialComplex pulling_triangulation(const PointSet& pts, int p_id) {
    const int d = pts.dim();
    const Point& p = pts.by_id(p_id);
    HullSkeleton hull = build_hull(pts);
    for (int id : hull.interior)
        if (id != p_id)
            throw Error("not-pullable",
                        "point " + std::to_string(id) + " is neither hull vertex nor apex");

    bool p_on_hull = hull.is_vertex(p_id);
    std::set<IdSet> top;
    for (const auto& f : hull.facets) {
        if (p_on_hull &&
            std::binary_search(f.verts.begin(), f.verts.end(), p_id))
            continue;
        IdSet cone = f.verts;
        cone.push_back(p_id);
        top.insert(make_idset(cone));
    }
    SimplicialComplex t = make_complex(d, std::move(top), "pulling");
    return t;
}

TriangulationOutput convex_big_triangulation(const PointSet& pts,
                                             const ConvexBigOptions& opt) {
    const int d = pts.dim();
    const long n = static_cast<long>(pts.size());
    if (d <= 2) throw Error("dimension", "requires dimension > 2");
    if (n <= static_cast<long>(d) * (d + 1))
        throw Error("too-small", "need more than d(d+1) points");
    if (!in_convex_position(pts))
        throw Error("not-convex-position", "input must be in convex position");

    // Peel max-degree vertices (ties by smallest id) onto a stack.
    IdSet current = pts.ids();
    std::vector<int> stack;
    while (true) {
        int req = required_degree(d, current.size(), opt.improved_constant);
        if (req == 0) break;
        SkeletonGraph g = one_skeleton(build_hull(pts.subset(current)));
        int best_id = -1, best_deg = -1;
        for (const auto& [v, deg] : g.degree) {
            if (deg > best_deg) {
                best_deg = deg;
                best_id = v;
            }
        }
        if (best_deg < req) break;   // schedule not sustainable; stop early
        stack.push_back(best_id);
        current.erase(std::find(current.begin(), current.end(), best_id));
    }

    SimplicialComplex t = shelling_triangulation(pts.subset(current), current);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
        t = insert_point(t, pts, pts.by_id(*it));

    TriangulationOutput out;
    out.complex = std::move(t);
    if (opt.improved_constant) {
        Rat bound = Rat(d + 1) * n - convex_constant_improved(d);
        out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                    "(d+1)n - (d(d+1)^2/2 + d(d+1)/12)", bound,
                                    "convex-big-improved");
    } else {
        Rat bound = Rat(d + 1) * n - convex_constant(d);
        out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                    "(d+1)n - (d^3+d^2+d)", bound, "convex-big");
    }
    return out;
}

TriangulationOutput nested_triangulation(const PointSet& p_pts, const PointSet& q_pts) {
    const int d = q_pts.dim();
    std::vector<Point> merged = q_pts.points();
    for (const auto& p : p_pts.points()) merged.push_back(p);
    PointSet all(merged);   // throws "duplicate" if P and Q share ids

    TriangulationOutput base = convex_big_triangulation(q_pts);
    SimplicialComplex t = base.complex;
    IdSet p_order = p_pts.ids();
    for (int id : p_order) t = insert_point(t, all, all.by_id(id));

    TriangulationOutput out;
    out.complex = std::move(t);
    Rat bound = Rat(d + 1) * static_cast<long>(q_pts.size()) +
                static_cast<long>(p_pts.size()) - convex_constant(d);
    out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                "(d+1)|Q| + |P| - c_d", bound, "nested");
    return out;
}

TriangulationOutput dn_log_triangulation(const PointSet& pts, const DnLogOptions& opt) {
    const int d = pts.dim();
    const long n = static_cast<long>(pts.size());
    if (d <= 2) throw Error("dimension", "requires dimension > 2");

    HullSkeleton hull = build_hull(pts);
    const long h = static_cast<long>(hull.vertices.size());
    const long c = convex_constant(d);

    // Threshold past which the headline closed form applies: n > 4^(d^2(d+1)).
    Int thresh = 1;
    mpz_ui_pow_ui(thresh.get_mpz_t(), 4,
                  static_cast<unsigned long>(d) * d * (d + 1));
    bool asym = Int(n) > thresh;

    TriangulationOutput out;
    if (h > static_cast<long>(d) * (d + 1)) {
        // Big-hull branch: large triangulation of the hull points, interior
        // insertions contribute d net simplices each.
        ConvexBigOptions cb;
        cb.improved_constant = opt.improved_constant;
        TriangulationOutput shell = convex_big_triangulation(pts.subset(hull.vertices), cb);
        SimplicialComplex t = shell.complex;
        for (int id : hull.interior) t = insert_point(t, pts, pts.by_id(id));
        out.complex = std::move(t);
        Rat cc = opt.improved_constant ? convex_constant_improved(d) : Rat(c);
        out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                    "dn + h - c_d", Rat(d) * n + h - cc,
                                    "big-hull", asym);
        return out;
    }

    // Small hull: look for a convex-position subset large enough to seed the
    // nested construction.
    const size_t floor = static_cast<size_t>(d) * (d + 1) + 1;
    IdSet q;
    try {
        ConvexSubsetOptions cs;
        cs.max_size = floor;
        cs.max_points = 64;
        cs.node_budget = opt.convex_search_budget;
        q = max_convex_subset(pts, floor, cs);
    } catch (const Error& e) {
        // Degraded: no guarantee from either branch at this scale; fall back
        // to a plain shelling and certify only the universal minimum.
        SimplicialComplex t = shelling_triangulation(pts, pts.ids());
        out.complex = std::move(t);
        out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                    "n - d (degraded: " + std::string(e.code()) + ")",
                                    Rat(n - d), "degraded", false);
        return out;
    }

    // P' = hull points outside Q; the rest are interior to Conv(P' + Q).
    IdSet pprime;
    std::set_difference(hull.vertices.begin(), hull.vertices.end(), q.begin(), q.end(),
                        std::back_inserter(pprime));
    TriangulationOutput nested =
        nested_triangulation(pts.subset(pprime), pts.subset(q));
    SimplicialComplex t = nested.complex;
    IdSet seeded = make_idset([&] {
        std::vector<int> v(q.begin(), q.end());
        v.insert(v.end(), pprime.begin(), pprime.end());
        return v;
    }());
    for (int id : pts.ids())
        if (!std::binary_search(seeded.begin(), seeded.end(), id))
            t = insert_point(t, pts, pts.by_id(id));
    out.complex = std::move(t);
    Rat bound = Rat(d) * n + static_cast<long>(q.size()) -
                Rat(d - 1) * static_cast<long>(pprime.size()) - c;
    out.cert = make_certificate(static_cast<long>(out.complex.size()),
                                "dn + |Q| - (d-1)|P'| - c_d", bound,
                                "convex-subset", asym);
    return out;
}

}  // namespace ems
