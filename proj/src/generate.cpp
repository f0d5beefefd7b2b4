#include <algorithm>
#include <functional>

#include "ems/instance.hpp"
#include "ems/predicates.hpp"

namespace ems {

namespace {

bool coords_distinct(const std::vector<Point>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].x == pts[j].x) return false;
    return true;
}

// Re-draws members of violating subsets until the set is in general
// position or retries run out.
PointSet repair_general_position(std::vector<Point> pts, int retries,
                                 const std::function<void(Point&)>& redraw) {
    for (int round = 0; round < retries; ++round) {
        if (coords_distinct(pts)) {
            GeneralPositionResult gp = general_position_check(PointSet(pts));
            if (gp.ok) return PointSet(std::move(pts));
            int victim = gp.violating.back();
            for (auto& p : pts)
                if (p.id == victim) redraw(p);
        } else {
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j)
                    if (pts[i].x == pts[j].x) redraw(pts[j]);
        }
    }
    throw Error("not-general-position", "could not reach general position within budget");
}

std::vector<Point> gen_random_ball(size_t n, int d, DetRng& rng, long box) {
    std::vector<Point> pts;
    Rat r2 = Rat(box) * Rat(box);
    for (size_t i = 0; i < n; ++i) {
        Point p;
        p.id = static_cast<int>(i);
        do {
            p.x.assign(d, 0);
            for (int k = 0; k < d; ++k) p.x[k] = rng.uniform(-box, box);
        } while (dot(p.x, p.x) > r2);
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> gen_moment_curve(size_t n, int d) {
    std::vector<Point> pts;
    for (size_t i = 0; i < n; ++i) {
        Point p;
        p.id = static_cast<int>(i);
        Rat t = static_cast<long>(i + 1);
        Rat pw = 1;
        for (int k = 0; k < d; ++k) {
            pw *= t;
            p.x.push_back(pw);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

// Stereographic image of a random rational u in R^{d-1}: the point
// (2u, |u|^2 - 1) / (|u|^2 + 1) lies exactly on the unit sphere, so the
// whole sample is in convex position.
Point sphere_point(int id, int d, DetRng& rng, long box) {
    // Numerator/denominator pairs spread |u| over several orders of
    // magnitude, covering the whole sphere instead of one polar cap.
    Vec u(d - 1);
    for (int k = 0; k + 1 < d; ++k)
        u[k] = Rat(rng.uniform(-box, box)) / rng.uniform(1, box);
    Rat n2 = dot(u, u);
    Rat den = n2 + 1;
    Point p;
    p.id = id;
    for (int k = 0; k + 1 < d; ++k) p.x.push_back(Rat(2) * u[k] / den);
    p.x.push_back((n2 - 1) / den);
    return p;
}

std::vector<Point> gen_grid_perturbed(size_t n, int d, DetRng& rng, long box) {
    // Smallest grid side covering n nodes; jitter denominator well below
    // the grid pitch so the combinatorics stay near-grid.
    long side = 1;
    while (rat_pow(Rat(side), d) < Rat(static_cast<long>(n))) ++side;
    long jd = 64 * side;
    std::vector<Point> pts;
    for (size_t i = 0; i < n; ++i) {
        Point p;
        p.id = static_cast<int>(i);
        size_t rem = i;
        for (int k = 0; k < d; ++k) {
            long cell = static_cast<long>(rem % side);
            rem /= side;
            p.x.push_back(Rat(cell) + Rat(rng.uniform(-16, 16)) / jd);
        }
        pts.push_back(std::move(p));
    }
    (void)box;
    return pts;
}

}  // namespace

std::vector<int> assign_colors(size_t n, int k, DetRng& rng) {
    std::vector<int> colors(n);
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    for (size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform(0, static_cast<long>(i) - 1)]);
    for (size_t i = 0; i < n; ++i) colors[order[i]] = static_cast<int>(i % k);
    return colors;
}

Instance generate_instance(const std::string& kind, size_t n, int d, int k,
                           uint64_t seed, const GenerateOptions& opt) {
    if (d < 1 || d > 8) throw Error("dimension", "supported dimensions are 1..8");
    if (n < static_cast<size_t>(d) + 1)
        throw Error("underdetermined", "need at least d+1 points");

    DetRng rng(seed);
    Instance inst;
    inst.seed = seed;
    inst.kind = kind;
    inst.k = k;

    if (kind == "moment-curve") {
        inst.pts = PointSet(gen_moment_curve(n, d));
    } else if (kind == "random-ball") {
        auto redraw = [&](Point& p) {
            Rat r2 = Rat(opt.box) * Rat(opt.box);
            do {
                p.x.assign(d, 0);
                for (int c = 0; c < d; ++c) p.x[c] = rng.uniform(-opt.box, opt.box);
            } while (dot(p.x, p.x) > r2);
        };
        inst.pts = repair_general_position(gen_random_ball(n, d, rng, opt.box),
                                           opt.retries, redraw);
    } else if (kind == "convex") {
        std::vector<Point> pts;
        for (size_t i = 0; i < n; ++i)
            pts.push_back(sphere_point(static_cast<int>(i), d, rng, opt.box));
        auto redraw = [&](Point& p) { p = sphere_point(p.id, d, rng, opt.box); };
        inst.pts = repair_general_position(std::move(pts), opt.retries, redraw);
    } else if (kind == "grid-perturbed") {
        auto redraw = [&](Point& p) {
            long side = 1;
            while (rat_pow(Rat(side), d) < Rat(static_cast<long>(n))) ++side;
            for (auto& c : p.x) {
                Rat base = Rat(rat_floor(c));
                c = base + Rat(rng.uniform(-16, 16)) / (64 * side);
            }
        };
        inst.pts = repair_general_position(gen_grid_perturbed(n, d, rng, opt.box),
                                           opt.retries, redraw);
    } else {
        throw Error("unknown-kind", "unsupported generator kind: " + kind);
    }

    if (k > 0) inst.colors = assign_colors(n, k, rng);
    return inst;
}

}  // namespace ems
