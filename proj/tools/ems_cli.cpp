// Command-line front end: instance generation, running the constructions,
// machine-readable run reports, and 2D SVG figures.
//
// Exit codes: 0 ok, 2 failed certificate or emptiness check, 3 precondition
// or input error, 4 budget exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "ems/colored.hpp"
#include "ems/hull.hpp"
#include "ems/instance.hpp"
#include "ems/order.hpp"
#include "ems/pipelines.hpp"
#include "ems/star.hpp"
#include "ems/triangulate.hpp"

using json = nlohmann::ordered_json;
using namespace ems;

namespace {

constexpr const char* kInstanceSchema = "ems-instance-1";
constexpr const char* kReportSchema = "ems-report-1";

json instance_to_json(const Instance& inst) {
    json j;
    j["schema"] = kInstanceSchema;
    j["kind"] = inst.kind;
    j["dimension"] = inst.pts.dim();
    j["k"] = inst.k;
    j["seed"] = inst.seed;
    json pts = json::array();
    for (size_t i = 0; i < inst.pts.size(); ++i) {
        const Point& p = inst.pts[i];
        json e;
        e["id"] = p.id;
        json coords = json::array();
        for (const Rat& c : p.x) coords.push_back(rat_to_string(c));
        e["x"] = coords;
        if (inst.k > 0) e["color"] = inst.colors[i];
        pts.push_back(e);
    }
    j["points"] = pts;
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.contains("schema") || j["schema"] != kInstanceSchema)
        throw Error("instance-format", "unknown instance schema");
    Instance inst;
    inst.kind = j.value("kind", "file");
    inst.k = j.value("k", 0);
    inst.seed = j.value("seed", 0ull);
    const int d = j.at("dimension").get<int>();
    std::vector<Point> pts;
    for (const json& e : j.at("points")) {
        Point p;
        p.id = e.at("id").get<int>();
        for (const json& c : e.at("x"))
            p.x.push_back(c.is_string() ? rat_from_string(c.get<std::string>())
                                        : Rat(c.get<long>()));
        if (p.dim() != d) throw Error("instance-format", "point dimension mismatch");
        pts.push_back(p);
        if (inst.k > 0) inst.colors.push_back(e.at("color").get<int>());
    }
    inst.pts = PointSet(std::move(pts));
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot read " + path);
    json j;
    in >> j;
    return instance_from_json(j);
}

// FNV-1a over the canonical serialization: the reproducibility key.
std::string digest(const json& j) {
    const std::string bytes = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json cert_to_json(const SizeCertificate& c) {
    json j;
    j["achieved"] = c.achieved;
    j["formula"] = c.formula;
    j["bound"] = rat_to_string(c.bound);
    j["slack"] = rat_to_string(c.slack);
    j["branch"] = c.branch;
    j["asymptotic_met"] = c.asymptotic_met;
    return j;
}

json idsets_to_json(const std::vector<IdSet>& sets) {
    json arr = json::array();
    for (const IdSet& s : sets) arr.push_back(s);
    return arr;
}

json report_to_json(const WitnessReport& rep) {
    json j;
    j["regime"] = rep.regime;
    j["color"] = rep.color;
    j["count"] = rep.simplices.size();
    j["simplices"] = idsets_to_json(rep.simplices);
    j["empty_verified"] = rep.empty_verified;
    j["pins_disjoint"] = rep.pins_disjoint;
    j["pins_used"] = rep.pins_used;
    j["pins_skipped"] = rep.pins_skipped;
    j["certificate"] = cert_to_json(rep.bound);
    j["notes"] = rep.notes;
    return j;
}

// Planar fallback: incremental insertion in id order; every triangulation
// of n points with h hull vertices has exactly 2n - h - 2 triangles.
TriangulationOutput planar_triangulation(const PointSet& pts) {
    TriangulationOutput out;
    out.complex = shelling_triangulation(pts, pts.ids());
    HullSkeleton hull = build_hull(pts);
    const long n = static_cast<long>(pts.size());
    const long h = static_cast<long>(hull.vertices.size());
    out.cert = make_certificate(static_cast<long>(out.complex.size()), "2n - h - 2",
                                Rat(2 * n - h - 2), "planar");
    return out;
}

ColoredPointSet colored_from(const Instance& inst) {
    if (inst.k < 1) throw Error("coloring", "task needs a colored instance");
    return make_colored(inst);
}

void write_out(const json& j, const std::string& path) {
    const std::string bytes = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << bytes;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("io", "cannot write " + path);
        out << bytes;
    }
}

bool cert_ok(const json& c) {
    return sign(rat_from_string(c["slack"].get<std::string>())) >= 0;
}

// Collects every certificate and emptiness flag in the report.
bool report_ok(const json& rep) {
    bool ok = true;
    if (rep.contains("certificates"))
        for (const json& c : rep["certificates"]) ok = ok && cert_ok(c);
    if (rep.contains("results")) {
        const json& r = rep["results"];
        if (r.contains("certificate")) ok = ok && cert_ok(r["certificate"]);
        if (r.contains("empty_verified")) ok = ok && r["empty_verified"].get<bool>();
        if (r.contains("witness_report"))
            ok = ok && cert_ok(r["witness_report"]["certificate"]) &&
                 r["witness_report"]["empty_verified"].get<bool>();
        if (r.contains("verified")) ok = ok && r["verified"].get<bool>();
        if (r.contains("validation_ok")) ok = ok && r["validation_ok"].get<bool>();
    }
    return ok;
}

json run_task(const std::string& task, const Instance& inst, int color, int jobs,
              unsigned long budget, const IdSet& pin) {
    json res;
    const int d = inst.pts.dim();
    if (task == "triangulate") {
        TriangulationOutput t = d == 2 ? planar_triangulation(inst.pts)
                                       : dn_log_triangulation(inst.pts);
        ValidationResult v = validate_complex(t.complex, inst.pts, true);
        res["size"] = t.complex.size();
        res["provenance"] = t.complex.provenance;
        res["certificate"] = cert_to_json(t.cert);
        res["validation_ok"] = v.ok;
    } else if (task == "star") {
        PinnedComplex pc;
        if (pin.size() >= 2) {
            pc = star_subset(inst.pts, pin);
        } else {
            int p = pin.empty() ? inst.pts[0].id : pin[0];
            if (pin.empty()) {
                HullSkeleton hull = build_hull(inst.pts);
                if (!hull.interior.empty()) p = hull.interior[0];
            }
            pc = d == 2 ? fan_2d(inst.pts, p)
                        : (d == 3 ? star_3d(inst.pts, p) : star_highd(inst.pts, p));
        }
        bool pinned = true;
        for (const IdSet& cell : pc.base.top)
            for (int id : pc.pin)
                pinned = pinned && std::binary_search(cell.begin(), cell.end(), id);
        res["pin"] = pc.pin;
        res["pinned_size"] = pc.base.size();
        res["pin_contained"] = pinned;
        res["certificate"] = cert_to_json(pc.cert);
        res["validation_ok"] = validate_complex(pc.base, inst.pts).ok && pinned;
    } else if (task == "order") {
        GeneralOrderOutput g = generalized_order_lemma(inst.pts);
        res["size"] = g.complex.size();
        res["touching"] = g.touching;
        res["certificate"] = cert_to_json(g.cert);
        res["validation_ok"] = validate_complex(g.complex, inst.pts, true).ok;
    } else if (task == "discrepancy") {
        ColoredPointSet s = colored_from(inst);
        DiscrepancyStats st = discrepancy(s);
        res["class_sizes"] = st.class_sizes;
        res["smax"] = st.smax;
        res["delta"] = st.delta;
        res["witness_report"] = report_to_json(discrepancy_witnesses(s));
    } else if (task == "census") {
        CensusOptions opt;
        opt.max_subsets = budget;
        opt.jobs = jobs;
        CensusResult c = census(colored_from(inst), opt);
        res["per_color"] = c.per_color;
        res["total"] = c.total;
        res["subsets_examined"] = c.subsets_examined;
    } else if (task == "peel") {
        ColoredPointSet s = colored_from(inst);
        int j = color >= 0 ? color : discrepancy(s).smax;
        DichotomyOutcome out;
        if (s.k == 2 && d == 2)
            out = peel_dichotomy_2color(s);
        else if (s.k == 2)
            out = project_induct_2color(s);
        else if (s.k == d)
            out = peel_dichotomy_kcolor(s, j);
        else
            out = project_induct_kcolor(s, j);
        res["outcome"] =
            out.kind == DichotomyOutcome::Kind::CONVEX_SET ? "convex-set" : "witnesses";
        res["rounds"] = out.rounds;
        if (out.kind == DichotomyOutcome::Kind::CONVEX_SET) {
            res["region"] = out.region;
            res["region_delta"] = out.region_delta;
            res["exit_inequality"] = out.exit_inequality;
        }
        res["witness_report"] = report_to_json(out.witnesses);
        res["notes"] = out.notes;
    } else if (task == "combined") {
        ColoredPointSet s = colored_from(inst);
        WitnessReport rep = s.k == 2 ? combined_2color(s) : combined_kcolor(s);
        res["witness_report"] = report_to_json(rep);
    } else if (task == "double") {
        DoublingResult dr = doubling_construction(inst.pts);
        res["pairs"] = dr.simplices.size();
        res["epsilon"] = rat_to_string(dr.epsilon);
        res["verified"] = dr.verified;
        res["simplices"] = idsets_to_json(dr.simplices);
    } else {
        throw Error("task", "unknown task " + task);
    }
    return res;
}

// Deterministic integer pixel coordinates from exact rationals.
struct Chart2d {
    Rat minx, miny, scale;
    long px(const Rat& x) const { return 20 + rat_floor((x - minx) * scale); }
    long py(const Rat& y) const { return 820 - rat_floor((y - miny) * scale); }
};

void render_svg(const Instance& inst, const std::string& overlay,
                const std::string& path) {
    if (inst.pts.dim() != 2) throw Error("dimension", "rendering needs d = 2");
    Rat minx = inst.pts[0].x[0], maxx = minx, miny = inst.pts[0].x[1], maxy = miny;
    for (const auto& p : inst.pts.points()) {
        if (cmp(p.x[0], minx) < 0) minx = p.x[0];
        if (cmp(p.x[0], maxx) > 0) maxx = p.x[0];
        if (cmp(p.x[1], miny) < 0) miny = p.x[1];
        if (cmp(p.x[1], maxy) > 0) maxy = p.x[1];
    }
    Rat span = maxx - minx;
    if (cmp(maxy - miny, span) > 0) span = maxy - miny;
    if (sign(span) == 0) span = 1;
    Chart2d ch{minx, miny, Rat(800) / span};

    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::map<int, int> color_of;
    for (size_t i = 0; i < inst.pts.size(); ++i)
        color_of[inst.pts[i].id] = inst.k > 0 ? inst.colors[i] : 0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"840\" "
           "viewBox=\"0 0 840 840\">\n";
    svg << "<rect width=\"840\" height=\"840\" fill=\"white\"/>\n";

    auto edge = [&](int a, int b, const char* stroke, int width) {
        const Point& pa = inst.pts.by_id(a);
        const Point& pb = inst.pts.by_id(b);
        svg << "<line x1=\"" << ch.px(pa.x[0]) << "\" y1=\"" << ch.py(pa.x[1])
            << "\" x2=\"" << ch.px(pb.x[0]) << "\" y2=\"" << ch.py(pb.x[1])
            << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    };

    if (overlay == "complex") {
        TriangulationOutput t = planar_triangulation(inst.pts);
        for (const IdSet& cell : t.complex.top) {
            edge(cell[0], cell[1], "#888888", 1);
            edge(cell[0], cell[2], "#888888", 1);
            edge(cell[1], cell[2], "#888888", 1);
        }
    } else if (overlay == "witnesses") {
        WitnessReport rep = discrepancy_witnesses(colored_from(inst));
        for (const IdSet& cell : rep.simplices) {
            edge(cell[0], cell[1], palette[rep.color % 6], 2);
            edge(cell[0], cell[2], palette[rep.color % 6], 2);
            edge(cell[1], cell[2], palette[rep.color % 6], 2);
        }
    } else if (overlay != "none") {
        throw Error("overlay", "unknown overlay " + overlay);
    }

    for (const auto& p : inst.pts.points())
        svg << "<circle cx=\"" << ch.px(p.x[0]) << "\" cy=\"" << ch.py(p.x[1])
            << "\" r=\"4\" fill=\"" << palette[color_of[p.id] % 6] << "\"/>\n";
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path);
    out << svg.str();
}

int exit_code_for(const Error& e) {
    const std::string code = e.code();
    if (code == "census-too-large" || code == "budget") return 4;
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-rational geometry constructions over colored point sets"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "produce an instance file");
    std::string g_kind = "random-ball", g_out;
    size_t g_n = 16;
    int g_d = 2, g_k = 0;
    uint64_t g_seed = 1;
    long g_box = 1000;
    gen->add_option("--kind", g_kind,
                    "random-ball | moment-curve | convex | grid-perturbed | doubled");
    gen->add_option("--n", g_n, "point count");
    gen->add_option("--d", g_d, "dimension")->check(CLI::Range(1, 6));
    gen->add_option("--k", g_k, "color count (0 = uncolored)");
    gen->add_option("--seed", g_seed, "deterministic seed");
    gen->add_option("--box", g_box, "coordinate box half-width");
    gen->add_option("--out", g_out, "output path (- for stdout)");

    // run
    auto* run = app.add_subcommand("run", "run a construction and report");
    std::string r_task, r_instance, r_report;
    int r_color = -1, r_jobs = 1;
    unsigned long r_budget = 2'000'000;
    std::vector<int> r_pin;
    run->add_option("--task", r_task,
                    "triangulate | star | order | discrepancy | census | peel | "
                    "combined | double")
        ->required();
    run->add_option("--instance", r_instance, "instance file")->required();
    run->add_option("--report", r_report, "report path (- for stdout)");
    run->add_option("--color", r_color, "color class for peel");
    run->add_option("--jobs", r_jobs, "worker threads for census");
    run->add_option("--budget", r_budget, "census candidate-subset cap");
    run->add_option("--pin", r_pin, "pin vertex id(s) for star");

    // render2d
    auto* ren = app.add_subcommand("render2d", "emit an SVG figure for d = 2");
    std::string v_instance, v_svg = "figure.svg", v_overlay = "none";
    ren->add_option("--instance", v_instance, "instance file")->required();
    ren->add_option("--svg", v_svg, "output SVG path");
    ren->add_option("--overlay", v_overlay, "none | complex | witnesses");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Instance inst;
            if (g_kind == "doubled") {
                Instance base = generate_instance("random-ball", g_n, 3, 0, g_seed,
                                                  GenerateOptions{g_box, 200});
                DoublingResult dr = doubling_construction(base.pts);
                inst.pts = dr.s;
                inst.kind = "doubled";
                inst.seed = g_seed;
                inst.k = g_k;
                if (g_k > 0) {
                    DetRng rng(g_seed);
                    inst.colors = assign_colors(inst.pts.size(), g_k, rng);
                }
            } else {
                inst = generate_instance(g_kind, g_n, g_d, g_k, g_seed,
                                         GenerateOptions{g_box, 200});
            }
            write_out(instance_to_json(inst), g_out);
            return 0;
        }
        if (run->parsed()) {
            Instance inst = load_instance(r_instance);
            json rep;
            rep["schema"] = kReportSchema;
            rep["command"] = "run";
            rep["task"] = r_task;
            rep["instance_digest"] = digest(instance_to_json(inst));
            json opts;
            opts["color"] = r_color;
            opts["jobs"] = r_jobs;
            opts["budget"] = r_budget;
            opts["pin"] = r_pin;
            rep["options"] = opts;
            rep["results"] =
                run_task(r_task, inst, r_color, r_jobs, r_budget, make_idset(r_pin));
            rep["ok"] = report_ok(rep);
            write_out(rep, r_report);
            return rep["ok"].get<bool>() ? 0 : 2;
        }
        if (ren->parsed()) {
            render_svg(load_instance(v_instance), v_overlay, v_svg);
            return 0;
        }
    } catch (const Error& e) {
        json err;
        err["schema"] = kReportSchema;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
