// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Everything is exact arithmetic; randomness is seeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ems/colored.hpp"
#include "ems/combin.hpp"
#include "ems/hull.hpp"
#include "ems/instance.hpp"
#include "ems/lp.hpp"
#include "ems/order.hpp"
#include "ems/pipelines.hpp"
#include "ems/predicates.hpp"
#include "ems/star.hpp"
#include "ems/triangulate.hpp"

using namespace ems;

namespace {

int failures = 0;

void verdict(int num, const std::string& desc, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, desc.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// Emptiness audit shared with criterion 9: every witness simplex that any
// construction reports is re-checked here point by point.
long audited_witnesses = 0;
long emptiness_violations = 0;

bool brute_empty(const PointSet& pts, const IdSet& simplex) {
    std::vector<Point> verts;
    for (int id : simplex) verts.push_back(pts.by_id(id));
    for (const auto& p : pts.points()) {
        if (std::binary_search(simplex.begin(), simplex.end(), p.id)) continue;
        if (in_simplex(p, verts) == Location::INTERIOR) return false;
    }
    return true;
}

void audit(const PointSet& pts, const std::vector<IdSet>& simplices) {
    for (const IdSet& sx : simplices) {
        ++audited_witnesses;
        if (!brute_empty(pts, sx)) ++emptiness_violations;
    }
}

ColoredPointSet colored_fixture(int d, const std::vector<long>& sizes, uint64_t seed) {
    size_t n = 0;
    for (long s : sizes) n += static_cast<size_t>(s);
    PointSet pts = generate_instance("random-ball", n, d, 0, seed).pts;
    std::map<int, int> color;
    size_t i = 0;
    for (int c = 0; c < static_cast<int>(sizes.size()); ++c)
        for (long j = 0; j < sizes[c]; ++j) color[pts[i++].id] = c;
    return make_colored(pts, color, static_cast<int>(sizes.size()));
}

PointSet simplex_hulled(size_t n, int d, uint64_t seed) {
    std::vector<Point> pts;
    const long big = 4000;
    for (int i = 0; i <= d; ++i) {
        Point p;
        p.id = i;
        p.x.assign(d, -big / 4);
        if (i > 0) p.x[i - 1] = big;
        pts.push_back(p);
    }
    GenerateOptions opt;
    opt.box = 100;
    PointSet inner = generate_instance("random-ball", n, d, 0, seed, opt).pts;
    for (const auto& q : inner.points()) {
        if (pts.size() >= n) break;
        Point p = q;
        p.id = static_cast<int>(pts.size());
        pts.push_back(p);
    }
    PointSet s(pts);
    if (!general_position_check(s).ok) return simplex_hulled(n, d, seed + 7777);
    HullSkeleton h = build_hull(s);
    if (h.vertices.size() != static_cast<size_t>(d) + 1)
        return simplex_hulled(n, d, seed + 7777);
    return s;
}

// ---- criterion bodies ----

void criterion_1() {
    long runs = 0, bad = 0;
    for (int d : {3, 4})
        for (int i = 0; i < 50; ++i) {
            // n <= 40, weighted away from the slowest d=4 sizes
            size_t n = d == 3 ? 13 + (i % 28) : 14 + (i % 17) + (i % 7 == 0 ? 10 : 0);
            PointSet pts = generate_instance("random-ball", n, d, 0, 1000 + 17 * i + d).pts;
            TriangulationOutput t = dn_log_triangulation(pts);
            ++runs;
            if (t.complex.size() < n - static_cast<size_t>(d)) ++bad;
        }
    verdict(1, "every size-guarantee triangulation has at least n - d cells", bad == 0,
            std::to_string(runs) + " instances, " + std::to_string(bad) + " below n-d");
}

void criterion_2() {
    long runs = 0, bad = 0;
    for (int i = 0; i < 30; ++i) {
        size_t n = 13 + (i * 48) / 30;  // 13..60
        PointSet pts = generate_instance("convex", n, 3, 0, 2000 + i).pts;
        TriangulationOutput t = convex_big_triangulation(pts);
        ++runs;
        if (static_cast<long>(t.complex.size()) < 4 * static_cast<long>(n) - 39) ++bad;
    }
    for (int i = 0; i < 20; ++i) {
        size_t n = 21 + i + (i == 19 ? 10 : 0);  // 21..39 plus one at 49
        PointSet pts = generate_instance("convex", n, 4, 0, 2100 + i).pts;
        TriangulationOutput t = convex_big_triangulation(pts);
        ++runs;
        if (static_cast<long>(t.complex.size()) < 5 * static_cast<long>(n) - 84) ++bad;
    }
    verdict(2, "degree-ordered convex triangulations meet 4n-39 (d=3) and 5n-84 (d=4)",
            bad == 0, std::to_string(runs) + " instances, " + std::to_string(bad) + " short");
}

bool star_ok(const PointSet& pts, const PinnedComplex& pc) {
    for (const IdSet& cell : pc.base.top)
        for (int id : pc.pin)
            if (!std::binary_search(cell.begin(), cell.end(), id)) return false;
    return sign(pc.cert.slack) >= 0 && validate_complex(pc.base, pts).ok;
}

void criterion_3() {
    long runs = 0, bad = 0;
    for (int i = 0; i < 50; ++i) {  // planar fan, n - 2
        size_t n = 8 + (i % 20);
        PointSet pts = generate_instance("random-ball", n, 2, 0, 3000 + i).pts;
        if (!star_ok(pts, fan_2d(pts, pts[0].id))) ++bad;
        ++runs;
    }
    for (int i = 0; i < 50; ++i) {  // 3d star, 2n-6 / 2n-deg-4
        size_t n = 8 + (i % 20);
        PointSet pts = generate_instance("random-ball", n, 3, 0, 3100 + i).pts;
        if (!star_ok(pts, star_3d(pts, pts[0].id))) ++bad;
        ++runs;
    }
    for (int i = 0; i < 50; ++i) {  // simplex-hulled star, (d-1)n - d^2 + 2
        int d = 2 + (i % 2);
        PointSet pts = simplex_hulled(9 + (i % 10), d, 3200 + i);
        if (!star_ok(pts, star_in_simplex(pts, 0))) ++bad;
        ++runs;
    }
    for (int i = 0; i < 50; ++i) {  // pin of size d-1, n - d
        PointSet pts = generate_instance("random-ball", 12, 4, 0, 3300 + i).pts;
        IdSet pin = {pts[0].id, pts[1].id, pts[2].id};
        if (!star_ok(pts, star_subset(pts, make_idset(pin)))) ++bad;
        ++runs;
    }
    long usable = 0;
    for (int i = 0; i < 50; ++i) {  // pin of size d-2, 2n - 2d - 8
        PointSet pts = generate_instance("random-ball", 16, 4, 0, 3400 + i).pts;
        IdSet ids = pts.ids();
        bool done = false;
        for (size_t a = 0; a < ids.size() && !done; ++a)
            for (size_t b = a + 1; b < ids.size() && !done; ++b) {
                IdSet pin = make_idset({ids[a], ids[b]});
                try {
                    PinnedComplex pc = star_subset(pts, pin);
                    ++usable;
                    if (!star_ok(pts, pc)) ++bad;
                    done = true;
                } catch (const Error&) {
                    // pin projects extremal; try the next one
                }
            }
        ++runs;
    }
    verdict(3, "all five pinned-star formulas hold with full pin containment", bad == 0,
            std::to_string(runs) + " runs (" + std::to_string(usable) +
                " usable d-2 pins), " + std::to_string(bad) + " failures");
}

void criterion_4() {
    long checked = 0, mismatches = 0;
    for (int d : {4, 5})
        for (int i = 0; i < 10; ++i) {
            size_t n = d == 4 ? 14 + (i % 7) : 12 + (i % 5);
            PointSet pts = generate_instance("random-ball", n, d, 0, 4000 + 31 * i + d).pts;
            HullSkeleton hull = build_hull(pts);
            IdSet ids = pts.ids();
            for_each_combination(ids.size(), d - 2, [&](const std::vector<size_t>& idx) {
                IdSet x;
                for (size_t t : idx) x.push_back(ids[t]);
                ++checked;
                if (pin_projects_extremal(pts, x) != is_face_of_hull(x, hull))
                    ++mismatches;
            });
        }
    verdict(4, "face-of-hull matches extremal projection for all (d-2)-subsets",
            mismatches == 0,
            std::to_string(checked) + " subsets, " + std::to_string(mismatches) +
                " mismatches");
}

void criterion_5() {
    long runs = 0, bad = 0;
    for (int i = 0; i < 50; ++i) {
        int d = 2 + (i % 2);
        size_t eta = 4 + (i % 22);  // interior points, <= 25
        PointSet pts = simplex_hulled(eta + d + 1, d, 5000 + i);
        HullSkeleton hull = build_hull(pts);
        eta = hull.interior.size();
        ++runs;
        ChainResult cr = dilworth_chain(facet_orders(pts, hull), hull.interior);
        if (static_cast<long>(cr.chain.size()) <
            ceil_root(static_cast<long>(eta), 1ul << (d - 1))) {
            ++bad;
            continue;
        }
        OrderLemmaOutput ol = order_lemma_simplex(pts);
        long recount = 0;
        for (const IdSet& cell : ol.complex.top)
            for (int v : cell)
                if (hull.is_vertex(v)) {
                    ++recount;
                    break;
                }
        if (recount != ol.touching ||
            recount < (d - 1) * static_cast<long>(eta) +
                          static_cast<long>(ol.chain.size()) + 1)
            ++bad;
    }
    verdict(5, "chain floor and hull-touching count of the order construction", bad == 0,
            std::to_string(runs) + " simplex-hulled instances, " + std::to_string(bad) +
                " failures");
}

struct Dominance {
    long runs = 0, violations = 0;
};

void check_dominance(Dominance& dom, const ColoredPointSet& s,
                     const std::vector<IdSet>& simplices) {
    CensusResult cen = census(s);
    std::vector<long> counted(s.k, 0);
    for (const IdSet& sx : simplices) ++counted[s.color.at(sx[0])];
    ++dom.runs;
    for (int c = 0; c < s.k; ++c)
        if (counted[c] > cen.per_color[c]) ++dom.violations;
    audit(s.pts, simplices);
}

void criterion_6() {
    Dominance dom;
    for (int i = 0; i < 70; ++i) {  // planar two-color
        long a = 6 + (i % 7), b = 4 + (i % 5);
        ColoredPointSet s = colored_fixture(2, {a, b}, 6000 + i);
        check_dominance(dom, s, discrepancy_witnesses(s).simplices);
        check_dominance(dom, s, combined_2color(s).simplices);
    }
    for (int i = 0; i < 15; ++i) {  // d=3 two-color
        ColoredPointSet s = colored_fixture(3, {8 + (i % 3), 5}, 6200 + i);
        check_dominance(dom, s, discrepancy_witnesses(s).simplices);
        check_dominance(dom, s, combined_2color(s).simplices);
    }
    for (int i = 0; i < 15; ++i) {  // d=3 three-color
        ColoredPointSet s = colored_fixture(3, {8, 3 + (i % 2), 3}, 6300 + i);
        check_dominance(dom, s, discrepancy_witnesses(s).simplices);
        check_dominance(dom, s, combined_kcolor(s).simplices);
    }
    for (int i = 0; i < 10; ++i) {  // d=3 four-color linear counting
        ColoredPointSet s = colored_fixture(3, {7, 5, 4, 4}, 6400 + i);
        check_dominance(dom, s, linear_witnesses(s).simplices);
    }
    for (int i = 0; i < 10; ++i) {  // d=4 three-color
        ColoredPointSet s = colored_fixture(4, {8, 4, 4}, 6500 + i);
        check_dominance(dom, s, discrepancy_witnesses(s).simplices);
    }
    verdict(6, "census dominates every witness report where it is in budget",
            dom.violations == 0,
            std::to_string(dom.runs) + " runs, " + std::to_string(dom.violations) +
                " violations");
}

void criterion_7() {
    long runs = 0, bad = 0;
    std::vector<std::vector<long>> shapes = {{8, 3, 3}, {9, 3, 3}, {10, 4, 4}};
    for (int i = 0; i < 12; ++i) {
        ColoredPointSet s = colored_fixture(3, shapes[i % 3], 7000 + i);
        DiscrepancyStats st = discrepancy(s);
        Rat rhs = Rat(st.delta - 10) / 12 * static_cast<long>(s.pts.size()) + 3;
        if (sign(rhs) <= 0) continue;
        WitnessReport rep = discrepancy_witnesses(s);
        ++runs;
        if (cmp(Rat(static_cast<long>(rep.simplices.size())), rhs) < 0) ++bad;
        audit(s.pts, rep.simplices);
    }
    verdict(7, "three-color d=3 counts meet (delta-10)/12*n + 3 exactly", bad == 0,
            std::to_string(runs) + " instances with positive bound, " +
                std::to_string(bad) + " short");
}

void criterion_8() {
    long runs = 0, bad = 0;
    for (size_t n : {3u, 8u, 12u}) {
        PointSet x;
        if (n <= 3) {  // generator needs n >= d+1
            auto pt = [](int id, std::vector<long> c) {
                Point p;
                p.id = id;
                for (long v : c) p.x.push_back(Rat(v));
                return p;
            };
            x = PointSet({pt(0, {0, 0, 0}), pt(1, {100, 10, 1}), pt(2, {7, 50, 200})});
        } else {
            x = generate_instance("random-ball", n, 3, 0, 8000 + n).pts;
        }
        DoublingResult res = doubling_construction(x);
        ++runs;
        if (!res.verified || res.simplices.size() != binom(n, 2).get_ui()) {
            ++bad;
            continue;
        }
        bool disjoint = true;
        for (size_t a = 0; a < res.simplices.size() && disjoint; ++a)
            for (size_t b = a + 1; b < res.simplices.size() && disjoint; ++b) {
                std::vector<Point> sa, sb;
                for (int id : res.simplices[a]) sa.push_back(res.s.by_id(id));
                for (int id : res.simplices[b]) sb.push_back(res.s.by_id(id));
                if (interiors_intersect(sa, sb)) disjoint = false;
            }
        if (!disjoint) ++bad;
    }
    verdict(8, "doubling yields C(n,2) pairwise interior-disjoint simplices", bad == 0,
            std::to_string(runs) + " runs, " + std::to_string(bad) + " failures");
}

void criterion_9() {
    verdict(9, "every reported witness simplex re-checks empty exhaustively",
            emptiness_violations == 0 && audited_witnesses > 0,
            std::to_string(audited_witnesses) + " witnesses audited, " +
                std::to_string(emptiness_violations) + " violations");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10(const char* argv0) {
    // library-level determinism
    ColoredPointSet s = colored_fixture(2, {9, 5}, 9100);
    auto snapshot = [&](void) {
        WitnessReport rep = combined_2color(s);
        CensusResult cen = census(s);
        std::ostringstream ss;
        for (const IdSet& sx : rep.simplices)
            for (int id : sx) ss << id << ',';
        ss << '|' << cen.total;
        for (long v : cen.per_color) ss << ',' << v;
        return ss.str();
    };
    bool lib_same = snapshot() == snapshot();

    // command-level determinism through the CLI binary next to this one
    std::string self(argv0);
    const size_t slash = self.find_last_of('/');
    const std::string cli =
        (slash == std::string::npos ? std::string(".") : self.substr(0, slash)) +
        "/ems_cli";
    bool cli_same = false;
    std::string quiet = " > /dev/null 2>&1";
    if (std::ifstream(cli).good()) {
        const std::string inst = "/tmp/ems_acceptance_instance.json";
        const std::string r1 = "/tmp/ems_acceptance_r1.json";
        const std::string r2 = "/tmp/ems_acceptance_r2.json";
        std::string gen = cli + " generate --kind random-ball --n 14 --d 2 --k 2 --seed 42 --out " +
                          inst + quiet;
        std::string run1 = cli + " run --task census --instance " + inst + " --report " + r1 + quiet;
        std::string run2 = cli + " run --task census --instance " + inst + " --report " + r2 + quiet;
        if (std::system(gen.c_str()) == 0 && std::system(run1.c_str()) == 0 &&
            std::system(run2.c_str()) == 0) {
            const std::string b1 = slurp(r1), b2 = slurp(r2);
            cli_same = !b1.empty() && b1 == b2;
        }
    }
    verdict(10, "repeated runs produce byte-identical results", lib_same && cli_same,
            std::string("library ") + (lib_same ? "ok" : "differs") + ", cli reports " +
                (cli_same ? "identical" : "differ or unavailable"));
}

}  // namespace

void safely(int num, const char* desc, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        verdict(num, desc, false, std::string("unexpected exception: ") + e.what());
    }
}

int main(int, char** argv) {
    safely(1, "minimum triangulation size", criterion_1);
    safely(2, "degree-ordered convex triangulations", criterion_2);
    safely(3, "pinned-star formulas", criterion_3);
    safely(4, "face-of-hull vs extremal projection", criterion_4);
    safely(5, "order construction internals", criterion_5);
    safely(6, "census dominance", criterion_6);
    safely(7, "three-color exact bound", criterion_7);
    safely(8, "doubling construction", criterion_8);
    safely(9, "emptiness soundness", criterion_9);
    criterion_10(argv[0]);
    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
