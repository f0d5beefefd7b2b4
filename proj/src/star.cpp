#include "ems/star.hpp"

#include <algorithm>

#include "ems/hull.hpp"
#include "ems/instance.hpp"
#include "ems/predicates.hpp"
#include "ems/projection.hpp"
#include "ems/triangulate.hpp"

namespace ems {

namespace {

std::vector<Point> gather(const PointSet& pts, const IdSet& ids) {
    std::vector<Point> v;
    v.reserve(ids.size());
    for (int id : ids) v.push_back(pts.by_id(id));
    return v;
}

// Recursive core of the simplex-hulled star: splits at the interior point
// nearest the facet opposite the pin and recurses into all parts.
void split_rec(const PointSet& pts, const IdSet& simplex, int p_id,
               const std::vector<int>& inside, std::set<IdSet>& out) {
    if (inside.empty()) {
        out.insert(simplex);
        return;
    }
    IdSet opposite;
    for (int id : simplex)
        if (id != p_id) opposite.push_back(id);
    Hyperplane h = hyperplane_through(gather(pts, opposite));

    int q_id = -1;
    Rat best;
    for (int id : inside) {
        Rat dist = dot(h.normal, pts.by_id(id).x) - h.offset;
        if (sign(dist) < 0) dist = -dist;
        if (q_id == -1 || dist < best || (dist == best && id < q_id)) {
            best = dist;
            q_id = id;
        }
    }

    // Children: replace each vertex of the simplex by q in turn.
    std::vector<IdSet> children;
    for (int drop : simplex) {
        IdSet child;
        for (int id : simplex)
            if (id != drop) child.push_back(id);
        child.push_back(q_id);
        children.push_back(make_idset(child));
    }
    std::vector<std::vector<int>> child_inside(children.size());
    std::vector<SimplexTester> testers;
    testers.reserve(children.size());
    for (const auto& c : children) testers.emplace_back(pts, c);
    for (int id : inside) {
        if (id == q_id) continue;
        bool placed = false;
        for (size_t c = 0; c < children.size(); ++c) {
            Location loc = testers[c].locate(pts.by_id(id));
            if (loc == Location::BOUNDARY)
                throw Error("not-general-position", "point on an internal face");
            if (loc == Location::INTERIOR) {
                child_inside[c].push_back(id);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw Error("not-general-position", "interior point escaped the split");
    }
    for (size_t c = 0; c < children.size(); ++c) {
        int dropped = simplex[c];   // children[c] replaced simplex[c]
        int next_pin = dropped == p_id ? q_id : p_id;
        split_rec(pts, children[c], next_pin, child_inside[c], out);
    }
}

}  // namespace

PinnedComplex star_in_simplex(const PointSet& pts, int p_id) {
    const int d = pts.dim();
    const long n = static_cast<long>(pts.size());
    HullSkeleton hull = build_hull(pts);
    if (hull.vertices.size() != static_cast<size_t>(d) + 1)
        throw Error("hull-not-simplex", "the convex hull must be a d-simplex");
    if (!hull.is_vertex(p_id))
        throw Error("hull-not-simplex", "the pin must be a hull vertex");

    std::set<IdSet> top;
    split_rec(pts, hull.vertices, p_id, hull.interior, top);

    PinnedComplex out;
    out.full = make_complex(d, std::move(top), "star");
    out.pin = {p_id};
    out.base = pinned_subcomplex(out.full, out.pin);
    Rat bound = Rat(d - 1) * n - static_cast<long>(d) * d + 2;
    out.cert = make_certificate(static_cast<long>(out.base.size()),
                                "(d-1)n - d^2 + 2", bound, "simplex-star");
    return out;
}

PinnedComplex fan_2d(const PointSet& pts, int p_id) {
    if (pts.dim() != 2) throw Error("dimension", "fan requires the plane");
    const long n = static_cast<long>(pts.size());
    if (n < 3) throw Error("underdetermined", "need at least 3 points");
    const Point& p = pts.by_id(p_id);

    std::vector<Point> others;
    for (const auto& q : pts.points())
        if (q.id != p_id) others.push_back(q);

    auto cross = [&](const Point& a, const Point& b) {
        return sign((a.x[0] - p.x[0]) * (b.x[1] - p.x[1]) -
                    (a.x[1] - p.x[1]) * (b.x[0] - p.x[0]));
    };
    auto half = [&](const Point& q) {
        if (q.x[1] != p.x[1]) return q.x[1] > p.x[1] ? 0 : 1;
        return q.x[0] > p.x[0] ? 0 : 1;
    };
    std::sort(others.begin(), others.end(), [&](const Point& a, const Point& b) {
        if (half(a) != half(b)) return half(a) < half(b);
        int s = cross(a, b);
        if (s == 0) throw Error("not-general-position", "collinear with the fan apex");
        return s > 0;
    });

    std::set<IdSet> top;
    for (size_t i = 0; i < others.size(); ++i) {
        const Point& a = others[i];
        const Point& b = others[(i + 1) % others.size()];
        if (cross(a, b) > 0)   // consecutive pair spans an angle below pi
            top.insert(make_idset({p_id, a.id, b.id}));
    }

    PinnedComplex out;
    out.full = make_complex(2, std::move(top), "star");
    out.pin = {p_id};
    out.base = out.full;
    out.cert = make_certificate(static_cast<long>(out.base.size()), "n - 2",
                                Rat(n - 2), "fan");
    return out;
}

PinnedComplex star_3d(const PointSet& pts, int p_id) {
    if (pts.dim() != 3) throw Error("dimension", "requires dimension 3");
    const long n = static_cast<long>(pts.size());
    if (n < 4) throw Error("underdetermined", "need at least 4 points");

    HullSkeleton hull = build_hull(pts);
    bool p_on_hull = hull.is_vertex(p_id);

    IdSet shell = hull.vertices;
    if (!p_on_hull) shell = make_idset([&] {
        std::vector<int> v(shell.begin(), shell.end());
        v.push_back(p_id);
        return v;
    }());
    SimplicialComplex pulled = pulling_triangulation(pts.subset(shell), p_id);

    std::set<IdSet> top;
    for (const auto& cell : pulled.top) {
        SimplexTester tester(pts, cell);
        std::vector<int> cell_ids(cell.begin(), cell.end());
        for (const auto& q : pts.points()) {
            if (std::binary_search(cell.begin(), cell.end(), q.id)) continue;
            Location loc = tester.locate(q);
            if (loc == Location::BOUNDARY)
                throw Error("not-general-position", "point on a cell boundary");
            if (loc == Location::INTERIOR) cell_ids.push_back(q.id);
        }
        PinnedComplex inner = star_in_simplex(pts.subset(make_idset(cell_ids)), p_id);
        for (const auto& s : inner.full.top) top.insert(s);
    }

    PinnedComplex out;
    out.full = make_complex(3, std::move(top), "star");
    out.pin = {p_id};
    out.base = pinned_subcomplex(out.full, out.pin);
    Rat bound;
    std::string formula;
    if (p_on_hull) {
        SkeletonGraph g = one_skeleton(hull);
        bound = Rat(2 * n - g.degree.at(p_id) - 4);
        formula = "2n - degree(p) - 4";
    } else {
        bound = Rat(2 * n - 6);
        formula = "2n - 6";
    }
    out.cert = make_certificate(static_cast<long>(out.base.size()), formula, bound,
                                p_on_hull ? "hull-vertex" : "interior");
    return out;
}

PinnedComplex star_highd(const PointSet& pts, int p_id, const StarHighdOptions& opt) {
    const int d = pts.dim();
    if (d <= 3) throw Error("dimension", "requires dimension above 3");
    const long n = static_cast<long>(pts.size());
    const Point& p = pts.by_id(p_id);

    std::vector<Point> others;
    for (const auto& q : pts.points())
        if (q.id != p_id) others.push_back(q);
    const long m = static_cast<long>(others.size());

    // Deterministic direction search for a halving hyperplane through p.
    DetRng rng(0xD15C0000u + static_cast<uint64_t>(n) * 131 + p_id);
    for (int attempt = 0; attempt < opt.direction_budget; ++attempt) {
        Vec v(d);
        for (int k = 0; k < d; ++k) v[k] = rng.uniform(-997, 997);
        Rat vp = dot(v, p.x);
        long above = 0, below = 0;
        bool on = false;
        for (const auto& q : others) {
            int s = sign(dot(v, q.x) - vp);
            if (s == 0) {
                on = true;
                break;
            }
            (s > 0 ? above : below)++;
        }
        if (on || std::labs(above - below) > 1) continue;

        // Walls beyond the extremes, parallel to the halving hyperplane.
        Rat lo = vp, hi = vp;
        for (const auto& q : others) {
            Rat val = dot(v, q.x);
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        Hyperplane wall1{v, hi + 1};
        Hyperplane wall2{v, lo - 1};

        CentralProjection cp;
        try {
            cp = central_project(PointSet(others), p, wall1, wall2);
        } catch (const Error&) {
            continue;
        }
        if (cp.side1.size() < static_cast<size_t>(d) ||
            cp.side2.size() < static_cast<size_t>(d))
            continue;
        if (!general_position_check(cp.side1).ok ||
            !general_position_check(cp.side2).ok)
            continue;

        DnLogOptions dopt;
        dopt.improved_constant = opt.improved_constant;
        TriangulationOutput t1, t2;
        try {
            t1 = dn_log_triangulation(cp.side1, dopt);
            t2 = dn_log_triangulation(cp.side2, dopt);
        } catch (const Error&) {
            continue;
        }

        std::set<IdSet> top;
        for (const auto* t : {&t1.complex, &t2.complex}) {
            for (const auto& s : t->top) {
                IdSet lifted = s;
                lifted.push_back(p_id);
                top.insert(make_idset(lifted));
            }
        }
        PinnedComplex out;
        out.full = make_complex(d, std::move(top), "star");
        out.pin = {p_id};
        out.base = out.full;
        Rat bound = t1.cert.bound + t2.cert.bound;
        out.cert = make_certificate(
            static_cast<long>(out.base.size()),
            "side bounds summed: [" + t1.cert.formula + "] + [" + t2.cert.formula + "]",
            bound, t1.cert.branch + "+" + t2.cert.branch,
            /*asymptotic_met=*/false);
        (void)m;
        return out;
    }
    throw Error("bad-plane-choice", "no usable halving direction within budget");
}

PointSet collapse_pin(const PointSet& pts, const IdSet& x) {
    const int d = pts.dim();
    const size_t r = x.size();
    if (r < 1 || r > static_cast<size_t>(d) - 1)
        throw Error("dimension", "pin size must be between 1 and d-1");

    AffineFlat flat;
    flat.basepoint = pts.by_id(x[0]);
    for (size_t i = 1; i < r; ++i)
        flat.directions.push_back(sub(pts.by_id(x[i]).x, flat.basepoint.x));

    PointSet img = r == 1 ? pts : project_orthogonal(pts, flat);
    std::vector<Point> keep;
    for (const auto& q : img.points()) {
        bool in_pin = std::binary_search(x.begin(), x.end(), q.id);
        if (!in_pin || q.id == x[0]) keep.push_back(q);
    }
    return PointSet(keep);
}

bool pin_projects_extremal(const PointSet& pts, const IdSet& x) {
    PointSet img = collapse_pin(pts, x);
    HullSkeleton hull = build_hull(img);
    return hull.is_vertex(x[0]);
}

PinnedComplex star_subset(const PointSet& pts, const IdSet& x) {
    const int d = pts.dim();
    const long n = static_cast<long>(pts.size());
    const size_t r = x.size();
    if (r < 1 || r > static_cast<size_t>(d) - 1)
        throw Error("dimension", "pin size must be between 1 and d-1");

    if (r == 1) {
        if (d == 2) return fan_2d(pts, x[0]);
        if (d == 3) return star_3d(pts, x[0]);
        return star_highd(pts, x[0]);
    }

    PointSet img = collapse_pin(pts, x);
    if (!general_position_check(img).ok)
        throw Error("not-general-position", "projected image is degenerate");

    const int img_d = img.dim();
    PinnedComplex inner;
    std::string formula;
    Rat bound;
    if (r == static_cast<size_t>(d) - 1) {
        // image in the plane: fan
        inner = fan_2d(img, x[0]);
        formula = "n - d";
        bound = Rat(n - d);
    } else if (r == static_cast<size_t>(d) - 2) {
        // image in 3-space: gated on the projection criterion
        if (pin_projects_extremal(pts, x))
            throw Error("pin-extremal",
                        "pin spans a (d-3)-face of the hull; image point is extremal");
        inner = star_3d(img, x[0]);
        formula = "2n - 2d - 8";
        bound = Rat(2 * n - 2 * d - 8);
    } else {
        // image dimension >= 4
        inner = img_d == 3 ? star_3d(img, x[0]) : star_highd(img, x[0]);
        formula = "(d-r)n + log2(n)/(2(d-r)) - 2c_{d-1} (achieved: image bound)";
        bound = inner.cert.bound;
    }

    std::set<IdSet> top;
    for (const auto& s : inner.base.top) {
        IdSet lifted;
        for (int id : s) {
            if (id == x[0]) continue;
            lifted.push_back(id);
        }
        lifted.insert(lifted.end(), x.begin(), x.end());
        top.insert(make_idset(lifted));
    }
    PinnedComplex out;
    out.full = make_complex(d, std::move(top), "star");
    out.pin = x;
    out.base = out.full;
    out.cert = make_certificate(static_cast<long>(out.base.size()), formula, bound,
                                "pin-r=" + std::to_string(r),
                                r == static_cast<size_t>(d) - 1 ||
                                    r == static_cast<size_t>(d) - 2);
    return out;
}

}  // namespace ems
