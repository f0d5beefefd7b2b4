#include "ems/complex.hpp"

#include <algorithm>

#include "ems/hull.hpp"
#include "ems/lp.hpp"
#include "ems/predicates.hpp"

namespace ems {

SimplicialComplex make_complex(int dim, std::set<IdSet> top, std::string provenance) {
    SimplicialComplex k;
    k.dim = dim;
    k.top = std::move(top);
    k.provenance = std::move(provenance);
    std::set<int> vs;
    for (const auto& s : k.top) vs.insert(s.begin(), s.end());
    k.vertexset.assign(vs.begin(), vs.end());
    return k;
}

SizeCertificate make_certificate(long achieved, std::string formula, Rat bound,
                                 std::string branch, bool asymptotic_met) {
    SizeCertificate c;
    c.achieved = achieved;
    c.formula = std::move(formula);
    c.bound = bound;
    c.slack = Rat(achieved) - bound;
    c.branch = std::move(branch);
    c.asymptotic_met = asymptotic_met;
    return c;
}

ValidationResult validate_complex(const SimplicialComplex& k, const PointSet& pts,
                                  bool check_cover) {
    ValidationResult res;
    std::vector<IdSet> tops(k.top.begin(), k.top.end());
    for (const auto& s : tops) {
        if (s.size() != static_cast<size_t>(k.dim) + 1) {
            res.ok = false;
            res.bad_a = s;
            res.reason = "top simplex has wrong vertex count";
            return res;
        }
        std::vector<Point> v;
        for (int id : s) v.push_back(pts.by_id(id));
        if (orientation(v) == 0) {
            res.ok = false;
            res.bad_a = s;
            res.reason = "degenerate top simplex";
            return res;
        }
    }
    for (size_t i = 0; i < tops.size(); ++i) {
        for (size_t j = i + 1; j < tops.size(); ++j) {
            if (!proper_intersection(pts, tops[i], tops[j])) {
                res.ok = false;
                res.bad_a = tops[i];
                res.bad_b = tops[j];
                res.reason = "pair does not meet face-to-face";
                return res;
            }
        }
    }
    if (check_cover) {
        Rat total = complex_volume(k, pts);
        Rat hullv = hull_volume(pts, k.vertexset);
        if (total != hullv) {
            res.ok = false;
            res.reason = "volumes do not cover the hull: " + rat_to_string(total) +
                         " vs " + rat_to_string(hullv);
            return res;
        }
    }
    return res;
}

Rat complex_volume(const SimplicialComplex& k, const PointSet& pts) {
    Rat total = 0;
    for (const auto& s : k.top) total += simplex_volume(pts, s);
    return total;
}

Rat hull_volume(const PointSet& pts, const IdSet& ids) {
    PointSet sub = pts.subset(ids);
    HullSkeleton hull = build_hull(sub);
    const Point& apex = sub.by_id(hull.vertices[0]);
    Rat total = 0;
    for (const auto& f : hull.facets) {
        if (std::binary_search(f.verts.begin(), f.verts.end(), apex.id)) continue;
        std::vector<Point> simplex;
        for (int id : f.verts) simplex.push_back(sub.by_id(id));
        simplex.push_back(apex);
        total += simplex_volume(simplex);
    }
    return total;
}

SimplicialComplex pinned_subcomplex(const SimplicialComplex& k, const IdSet& pin) {
    std::set<IdSet> keep;
    for (const auto& s : k.top)
        if (std::includes(s.begin(), s.end(), pin.begin(), pin.end())) keep.insert(s);
    SimplicialComplex out = make_complex(k.dim, std::move(keep), k.provenance);
    return out;
}

}  // namespace ems
