#include "ems/lp.hpp"

#include <algorithm>

namespace ems {

namespace {

// Dense simplex tableau on rows [A | b] with basis tracking, Bland's rule.
struct Tableau {
    Matrix a;                 // m x n
    Vec b;                    // m
    std::vector<int> basis;   // m, column index of basic variable per row

    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a[0].size(); }

    void pivot(size_t r, size_t c) {
        Rat piv = a[r][c];
        for (Rat& v : a[r]) v /= piv;
        b[r] /= piv;
        for (size_t i = 0; i < rows(); ++i) {
            if (i == r || sign(a[i][c]) == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols(); ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        basis[r] = static_cast<int>(c);
    }

    // Optimizes max obj.x over the current basis. Returns false if unbounded.
    bool optimize(const Vec& obj, const std::vector<bool>& allowed) {
        for (;;) {
            // Reduced costs: obj_j - obj_B . B^-1 A_j; tableau rows already
            // express basic solution, so compute z_j from basis directly.
            Vec zrow(cols(), 0);
            for (size_t i = 0; i < rows(); ++i) {
                const Rat& cb = obj[basis[i]];
                if (sign(cb) == 0) continue;
                for (size_t j = 0; j < cols(); ++j) zrow[j] += cb * a[i][j];
            }
            size_t enter = cols();
            for (size_t j = 0; j < cols(); ++j) {
                if (!allowed[j]) continue;
                if (sign(obj[j] - zrow[j]) > 0) { enter = j; break; }  // Bland
            }
            if (enter == cols()) return true;
            size_t leave = rows();
            Rat best;
            for (size_t i = 0; i < rows(); ++i) {
                if (sign(a[i][enter]) <= 0) continue;
                Rat ratio = b[i] / a[i][enter];
                if (leave == rows() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPResult solve_lp(const Matrix& a0, const Vec& b0, const Vec& c) {
    const size_t m = a0.size();
    const size_t n = m ? a0[0].size() : c.size();
    Tableau t;
    t.a = a0;
    t.b = b0;
    for (size_t i = 0; i < m; ++i) {
        if (sign(t.b[i]) < 0) {
            for (Rat& v : t.a[i]) v = -v;
            t.b[i] = -t.b[i];
        }
    }
    // Phase 1: artificial variable per row.
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) t.a[i].push_back(i == j ? 1 : 0);
        t.basis.push_back(static_cast<int>(n + i));
    }
    Vec phase1(n + m, 0);
    for (size_t j = n; j < n + m; ++j) phase1[j] = -1;
    std::vector<bool> all(n + m, true);
    t.optimize(phase1, all);
    Rat p1 = 0;
    for (size_t i = 0; i < m; ++i)
        if (t.basis[i] >= static_cast<int>(n)) p1 += t.b[i];
    if (sign(p1) != 0) return {LPStatus::INFEASIBLE, 0, {}};
    // Drive remaining artificials out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
        if (t.basis[i] < static_cast<int>(n)) continue;
        size_t enter = n;
        for (size_t j = 0; j < n; ++j)
            if (sign(t.a[i][j]) != 0) { enter = j; break; }
        if (enter < n) t.pivot(i, enter);
        // Otherwise the row is redundant (all-zero over original columns).
    }
    std::vector<bool> allowed(n + m, false);
    for (size_t j = 0; j < n; ++j) allowed[j] = true;
    Vec obj(n + m, 0);
    for (size_t j = 0; j < n; ++j) obj[j] = c[j];
    if (!t.optimize(obj, allowed)) return {LPStatus::UNBOUNDED, 0, {}};
    Vec x(n, 0);
    for (size_t i = 0; i < m; ++i)
        if (t.basis[i] < static_cast<int>(n)) x[t.basis[i]] = t.b[i];
    Rat val = 0;
    for (size_t j = 0; j < n; ++j) val += c[j] * x[j];
    return {LPStatus::OPTIMAL, val, x};
}

bool interiors_intersect(const std::vector<Point>& pa, const std::vector<Point>& pb) {
    const int d = pa[0].dim();
    const size_t na = pa.size(), nb = pb.size();
    // Vars: alpha (na), beta (nb), t. Point in both hulls with all weights
    // >= t; interiors meet iff max t > 0.
    const size_t n = na + nb + 1;
    Matrix a(d + 2, Vec(n, 0));
    Vec b(d + 2, 0), c(n, 0);
    for (size_t j = 0; j < na; ++j)
        for (int i = 0; i < d; ++i) a[i][j] = pa[j].x[i];
    for (size_t j = 0; j < nb; ++j)
        for (int i = 0; i < d; ++i) a[i][na + j] = -pb[j].x[i];
    for (size_t j = 0; j < na; ++j) a[d][j] = 1;
    for (size_t j = 0; j < nb; ++j) a[d + 1][na + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;
    // Substitute weights w = w' + t: keep explicit t column instead.
    for (int i = 0; i < d; ++i) {
        Rat s = 0;
        for (size_t j = 0; j < na; ++j) s += pa[j].x[i];
        for (size_t j = 0; j < nb; ++j) s -= pb[j].x[i];
        a[i][na + nb] = s;
    }
    a[d][na + nb] = static_cast<long>(na);
    a[d + 1][na + nb] = static_cast<long>(nb);
    c[na + nb] = 1;
    LPResult res = solve_lp(a, b, c);
    if (res.status == LPStatus::INFEASIBLE) return false;
    if (res.status == LPStatus::UNBOUNDED) return true;  // cannot happen: t <= 1
    return sign(res.value) > 0;
}

bool proper_intersection(const PointSet& pts, const IdSet& sa, const IdSet& sb) {
    std::vector<Point> pa, pb;
    for (int id : sa) pa.push_back(pts.by_id(id));
    for (int id : sb) pb.push_back(pts.by_id(id));
    const int d = pa[0].dim();
    const size_t na = pa.size(), nb = pb.size();
    IdSet shared;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(shared));
    // Bounding boxes disjoint => hulls disjoint => proper iff nothing shared.
    bool box_disjoint = false;
    for (int i = 0; i < d && !box_disjoint; ++i) {
        Rat amin = pa[0].x[i], amax = amin, bmin = pb[0].x[i], bmax = bmin;
        for (const auto& p : pa) { amin = std::min(amin, p.x[i]); amax = std::max(amax, p.x[i]); }
        for (const auto& p : pb) { bmin = std::min(bmin, p.x[i]); bmax = std::max(bmax, p.x[i]); }
        if (amax < bmin || bmax < amin) box_disjoint = true;
    }
    if (box_disjoint) return true;
    // Maximize total weight outside the shared face over the closed
    // intersection; proper iff that optimum is zero (or the hulls miss).
    const size_t n = na + nb;
    Matrix a(d + 2, Vec(n, 0));
    Vec b(d + 2, 0), c(n, 0);
    for (size_t j = 0; j < na; ++j)
        for (int i = 0; i < d; ++i) a[i][j] = pa[j].x[i];
    for (size_t j = 0; j < nb; ++j)
        for (int i = 0; i < d; ++i) a[i][na + j] = -pb[j].x[i];
    for (size_t j = 0; j < na; ++j) a[d][j] = 1;
    for (size_t j = 0; j < nb; ++j) a[d + 1][na + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;
    for (size_t j = 0; j < na; ++j)
        if (!std::binary_search(shared.begin(), shared.end(), sa[j])) c[j] = 1;
    for (size_t j = 0; j < nb; ++j)
        if (!std::binary_search(shared.begin(), shared.end(), sb[j])) c[na + j] = 1;
    LPResult res = solve_lp(a, b, c);
    if (res.status == LPStatus::INFEASIBLE) return shared.empty();
    return sign(res.value) == 0;
}

}  // namespace ems
