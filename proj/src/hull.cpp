#include "ems/hull.hpp"

#include <algorithm>
#include <set>

#include "ems/combin.hpp"

namespace ems {

namespace {

// Signed side of p against an oriented facet plane: > 0 means beyond.
int side(const Hyperplane& h, const Vec& x) { return sign(dot(h.normal, x) - h.offset); }

// Orients h so that ref lies strictly on the negative (inside) side.
void orient_away_from(Hyperplane& h, const Vec& ref) {
    int s = side(h, ref);
    if (s == 0) throw Error("not-general-position", "reference point on facet plane");
    if (s > 0) {
        for (auto& c : h.normal) c = -c;
        h.offset = -h.offset;
    }
}

std::vector<Point> gather(const PointSet& pts, const IdSet& ids) {
    std::vector<Point> v;
    v.reserve(ids.size());
    for (int id : ids) v.push_back(pts.by_id(id));
    return v;
}

}  // namespace

bool HullSkeleton::is_vertex(int id) const {
    return std::binary_search(vertices.begin(), vertices.end(), id);
}

std::vector<std::pair<size_t, size_t>> HullSkeleton::ridges() const {
    std::map<IdSet, std::vector<size_t>> by_ridge;
    for (size_t f = 0; f < facets.size(); ++f) {
        const IdSet& v = facets[f].verts;
        for (size_t drop = 0; drop < v.size(); ++drop) {
            IdSet r;
            r.reserve(v.size() - 1);
            for (size_t i = 0; i < v.size(); ++i)
                if (i != drop) r.push_back(v[i]);
            by_ridge[r].push_back(f);
        }
    }
    std::vector<std::pair<size_t, size_t>> out;
    for (const auto& [r, fs] : by_ridge) {
        if (fs.size() != 2)
            throw Error("not-general-position", "ridge not shared by exactly two facets");
        out.emplace_back(fs[0], fs[1]);
    }
    return out;
}

HullSkeleton build_hull(const PointSet& pts) {
    const int d = pts.dim();
    if (d < 1) throw Error("dimension", "hull needs dimension >= 1");
    if (pts.size() < static_cast<size_t>(d) + 1)
        throw Error("underdetermined", "hull needs at least d+1 points");

    std::vector<Point> order = pts.points();
    std::sort(order.begin(), order.end(),
              [](const Point& a, const Point& b) { return a.id < b.id; });

    // Greedy affinely independent seed simplex, in id order.
    std::vector<Point> seed;
    std::vector<bool> used(order.size(), false);
    seed.push_back(order[0]);
    used[0] = true;
    Matrix dirs;
    for (size_t i = 1; i < order.size() && seed.size() < static_cast<size_t>(d) + 1; ++i) {
        Matrix trial = dirs;
        trial.push_back(sub(order[i].x, order[0].x));
        if (rank(trial) == static_cast<int>(trial.size())) {
            dirs = std::move(trial);
            seed.push_back(order[i]);
            used[i] = true;
        }
    }
    if (seed.size() != static_cast<size_t>(d) + 1)
        throw Error("not-general-position", "points span no full-dimensional simplex");

    // Interior reference: centroid of the seed simplex.
    Vec ref(d, 0);
    for (const auto& p : seed)
        for (int k = 0; k < d; ++k) ref[k] += p.x[k];
    for (int k = 0; k < d; ++k) ref[k] /= Rat(d + 1);

    std::vector<Facet> facets;
    for (size_t drop = 0; drop <= static_cast<size_t>(d); ++drop) {
        std::vector<Point> fpts;
        IdSet fids;
        for (size_t i = 0; i < seed.size(); ++i) {
            if (i == drop) continue;
            fpts.push_back(seed[i]);
            fids.push_back(seed[i].id);
        }
        Hyperplane h = hyperplane_through(fpts);
        orient_away_from(h, ref);
        facets.push_back({make_idset(fids), std::move(h)});
    }

    for (size_t i = 0; i < order.size(); ++i) {
        if (used[i]) continue;
        const Point& p = order[i];
        if (p.dim() != d) throw Error("dimension", "point dimension mismatch");

        std::vector<size_t> visible;
        for (size_t f = 0; f < facets.size(); ++f) {
            int s = side(facets[f].plane, p.x);
            if (s == 0)
                throw Error("not-general-position",
                            "point " + std::to_string(p.id) + " lies on a facet plane");
            if (s > 0) visible.push_back(f);
        }
        if (visible.empty()) continue;  // beneath every facet: inside

        // Horizon ridges: those covered exactly once among visible facets.
        std::map<IdSet, int> ridge_count;
        for (size_t f : visible) {
            const IdSet& v = facets[f].verts;
            for (size_t drop = 0; drop < v.size(); ++drop) {
                IdSet r;
                for (size_t j = 0; j < v.size(); ++j)
                    if (j != drop) r.push_back(v[j]);
                ridge_count[r]++;
            }
        }

        std::vector<Facet> fresh;
        for (const auto& [r, cnt] : ridge_count) {
            if (cnt != 1) continue;
            std::vector<Point> fpts = gather(pts, r);
            fpts.push_back(p);
            Hyperplane h = hyperplane_through(fpts);
            orient_away_from(h, ref);
            IdSet fids = r;
            fids.push_back(p.id);
            fresh.push_back({make_idset(fids), std::move(h)});
        }

        std::set<size_t> dead(visible.begin(), visible.end());
        std::vector<Facet> next;
        next.reserve(facets.size() - dead.size() + fresh.size());
        for (size_t f = 0; f < facets.size(); ++f)
            if (!dead.count(f)) next.push_back(std::move(facets[f]));
        for (auto& f : fresh) next.push_back(std::move(f));
        facets = std::move(next);
    }

    HullSkeleton hull;
    hull.dim = d;
    hull.facets = std::move(facets);

    std::set<int> vset;
    for (const auto& f : hull.facets) vset.insert(f.verts.begin(), f.verts.end());
    hull.vertices.assign(vset.begin(), vset.end());
    for (const auto& p : pts.points())
        if (!vset.count(p.id)) hull.interior.push_back(p.id);
    std::sort(hull.interior.begin(), hull.interior.end());

    // f-vector: faces are exactly the vertex subsets of facets (simplicial).
    std::vector<std::set<IdSet>> faces(d);
    for (const auto& f : hull.facets) {
        for (size_t k = 1; k <= f.verts.size(); ++k) {
            for_each_combination(f.verts.size(), k, [&](const std::vector<size_t>& idx) {
                IdSet face;
                face.reserve(k);
                for (size_t j : idx) face.push_back(f.verts[j]);
                faces[k - 1].insert(face);
            });
        }
    }
    hull.fvector.resize(d);
    for (int k = 0; k < d; ++k) hull.fvector[k] = static_cast<long>(faces[k].size());
    return hull;
}

SkeletonGraph one_skeleton(const HullSkeleton& hull) {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : hull.facets) {
        for (size_t a = 0; a < f.verts.size(); ++a)
            for (size_t b = a + 1; b < f.verts.size(); ++b)
                edges.emplace(f.verts[a], f.verts[b]);
    }
    SkeletonGraph g;
    g.edges.assign(edges.begin(), edges.end());
    for (int v : hull.vertices) g.degree[v] = 0;
    for (const auto& [a, b] : g.edges) {
        g.degree[a]++;
        g.degree[b]++;
    }
    return g;
}

FacetVisibility visible_facets(const HullSkeleton& hull, const Point& p) {
    FacetVisibility fv;
    fv.viewer = p;
    for (size_t f = 0; f < hull.facets.size(); ++f) {
        int s = side(hull.facets[f].plane, p.x);
        if (s == 0)
            throw Error("not-general-position", "viewer lies on a facet plane");
        if (s > 0) fv.visible.push_back(f);
    }
    if (fv.visible.empty())
        throw Error("not-exterior", "viewer is inside the hull");
    return fv;
}

bool is_face_of_hull(const IdSet& x, const HullSkeleton& hull) {
    if (x.empty() || x.size() > static_cast<size_t>(hull.dim)) return false;
    for (const auto& f : hull.facets)
        if (std::includes(f.verts.begin(), f.verts.end(), x.begin(), x.end())) return true;
    return false;
}

bool in_convex_position(const PointSet& pts) {
    const int d = pts.dim();
    if (pts.size() <= static_cast<size_t>(d) + 1) {
        // Small sets are convex iff affinely independent.
        Matrix dirs;
        for (size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i].x, pts[0].x));
        return rank(dirs) == static_cast<int>(dirs.size());
    }
    return build_hull(pts).interior.empty();
}

namespace {

// Exact planar maximum: for each choice of lexicographically lowest polygon
// vertex b, points above b are sorted by angle; dp[i][j] = longest convex
// chain b -> ... -> i -> j turning left at every internal vertex.
IdSet planar_max_convex(const PointSet& pts) {
    const auto& all = pts.points();
    const size_t n = all.size();
    IdSet best;
    if (n == 0) return best;
    best.push_back(all[0].id);
    if (n >= 2) best = make_idset({all[0].id, all[1].id});

    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return sign((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
    };
    auto lex_below = [](const Point& a, const Point& b) {
        if (a.x[1] != b.x[1]) return a.x[1] < b.x[1];
        if (a.x[0] != b.x[0]) return a.x[0] < b.x[0];
        return a.id < b.id;
    };

    for (size_t bi = 0; bi < n; ++bi) {
        const Point& b = all[bi];
        std::vector<Point> cand;
        for (size_t i = 0; i < n; ++i)
            if (i != bi && lex_below(b, all[i])) cand.push_back(all[i]);
        const size_t m = cand.size();
        if (m < 2) continue;
        std::sort(cand.begin(), cand.end(), [&](const Point& p, const Point& q) {
            int s = cross(b.x, p.x, q.x);
            if (s != 0) return s > 0;  // smaller angle first (ccw sweep)
            throw Error("not-general-position", "collinear triple in planar search");
        });

        // dp/pred over ordered pairs of chain tail vertices.
        std::vector<std::vector<int>> dp(m, std::vector<int>(m, 0));
        std::vector<std::vector<int>> pred(m, std::vector<int>(m, -1));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) dp[i][j] = 3;
        for (size_t j = 0; j < m; ++j) {
            for (size_t k = j + 1; k < m; ++k) {
                for (size_t i = 0; i < j; ++i) {
                    if (dp[i][j] == 0) continue;
                    if (cross(cand[i].x, cand[j].x, cand[k].x) <= 0) continue;  // not a left turn
                    if (dp[i][j] + 1 > dp[j][k]) {
                        dp[j][k] = dp[i][j] + 1;
                        pred[j][k] = static_cast<int>(i);
                    }
                }
            }
        }
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                if (dp[i][j] < 3) continue;
                if (cross(cand[i].x, cand[j].x, b.x) <= 0) continue;  // closing turn at j
                if (dp[i][j] > static_cast<int>(best.size())) {
                    IdSet poly = {b.id, cand[j].id};
                    int ci = static_cast<int>(i), cj = static_cast<int>(j);
                    while (ci >= 0) {
                        poly.push_back(cand[ci].id);
                        int pi = pred[ci][cj];
                        cj = ci;
                        ci = pi;
                    }
                    best = make_idset(poly);
                }
            }
        }
    }
    return best;
}

struct DfsState {
    const PointSet& pts;
    const std::vector<Point>& order;
    const ConvexSubsetOptions& opt;
    size_t floor;
    size_t nodes = 0;
    IdSet best;
    bool done = false;
};

void dfs_convex(DfsState& st, std::vector<int>& cur, size_t next) {
    if (st.done) return;
    if (++st.nodes > st.opt.node_budget) {
        st.done = true;
        return;
    }
    if (cur.size() > st.best.size()) st.best = make_idset(cur);
    if (st.best.size() >= st.opt.max_size) {
        st.done = true;   // cap reached; callers set the cap to what they need
        return;
    }
    for (size_t i = next; i < st.order.size(); ++i) {
        if (cur.size() + (st.order.size() - i) <= st.best.size()) break;  // can't win
        cur.push_back(st.order[i].id);
        bool ok = true;
        if (cur.size() > static_cast<size_t>(st.pts.dim()) + 1)
            ok = in_convex_position(st.pts.subset(make_idset(cur)));
        if (ok) dfs_convex(st, cur, i + 1);
        cur.pop_back();
        if (st.done) return;
    }
}

}  // namespace

IdSet max_convex_subset(const PointSet& pts, size_t floor, const ConvexSubsetOptions& opt) {
    IdSet best;
    if (pts.dim() == 2) {
        best = planar_max_convex(pts);
    } else {
        if (pts.size() > opt.max_points)
            throw Error("budget", "convex-subset search capped at " +
                                      std::to_string(opt.max_points) + " points");
        std::vector<Point> order = pts.points();
        std::sort(order.begin(), order.end(),
                  [](const Point& a, const Point& b) { return a.id < b.id; });
        DfsState st{pts, order, opt, floor};
        std::vector<int> cur;
        dfs_convex(st, cur, 0);
        best = st.best;
    }
    if (best.size() < floor)
        throw Error("convex-subset-not-found",
                    "largest convex subset found has size " + std::to_string(best.size()) +
                        ", below floor " + std::to_string(floor));
    return best;
}

bool satisfies_lower_bound_theorem(int d, const std::vector<long>& fvec) {
    if (static_cast<int>(fvec.size()) != d || d < 2) return false;
    Int f0 = fvec[0];
    for (int m = 1; m <= d - 2; ++m) {
        Int bound = binom(d, m) * f0 - binom(d + 1, m + 1) * m;
        if (Int(fvec[m]) < bound) return false;
    }
    return Int(fvec[d - 1]) >= (d - 1) * f0 - (d + 1) * (d - 2);
}

}  // namespace ems
