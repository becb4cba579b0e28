// Command-line front end: evaluate gauge/distance/cross-ratio/map values,
// run named verification suites, classify metric models, and compare the
// CC distance against the gauge. Every number printed here is produced by a
// library call; the CLI itself does no mathematics.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "heismoeb/json_io.hpp"
#include "heismoeb/suites.hpp"

using namespace heismoeb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMathDomain = 3;

struct GlobalOpts {
    std::string field = "C";
    std::size_t n = 2;
    std::uint64_t seed = 0;
    std::size_t samples = 2000;
    double tol = 0.0;
    std::string out;
    std::string format = "json";

    RunConfig config() const {
        RunConfig cfg;
        cfg.field = field_from_name(field);
        cfg.n = n;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.tol = tol;
        cfg.format = format;
        cfg.validate();
        return cfg;
    }
};

json parse_json_arg(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(std::string("malformed JSON for ") + what);
    return j;
}

void emit(const GlobalOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(opts.out);
        if (!f) throw Error("cannot open output file " + opts.out);
        f << text << "\n";
    }
}

void print_value(double v) { std::printf("%.15g\n", v); }

MetricModel metric_from_opts(const std::string& metric_json, const RunConfig& cfg) {
    if (metric_json.empty())
        return MetricModel::koranyi_power(cfg.field, cfg.dim(), 1.0, 1.0);
    return metric_from_json(parse_json_arg(metric_json, "--metric"), cfg.field, cfg.dim());
}

int run_eval(const GlobalOpts& opts, const std::string& what, const std::string& point_arg,
             const std::string& q_arg, const std::string& points_arg, const std::string& map_arg,
             const std::string& metric_arg) {
    RunConfig cfg = opts.config();
    MetricModel metric = metric_from_opts(metric_arg, cfg);
    if (what == "gauge") {
        HPoint p = hpoint_from_json(parse_json_arg(point_arg, "--point"), cfg.field);
        print_value(koranyi_gauge(p));
        return kExitOk;
    }
    if (what == "dist") {
        BoundaryPoint p = boundary_from_json(parse_json_arg(point_arg, "--point"), cfg.field);
        BoundaryPoint q = boundary_from_json(parse_json_arg(q_arg, "--q"), cfg.field);
        print_value(metric_eval(metric, p, q));
        return kExitOk;
    }
    if (what == "xratio") {
        json pj = parse_json_arg(points_arg, "--points");
        if (!pj.is_array() || pj.size() != 4) throw Error("--points needs exactly 4 points");
        std::array<BoundaryPoint, 4> quad;
        for (int i = 0; i < 4; ++i) quad[i] = boundary_from_json(pj[i], cfg.field);
        auto cr = cross_ratio_pair(metric, quad);
        std::printf("%.15g %.15g\n", cr.x1, cr.x2);
        return kExitOk;
    }
    if (what == "map") {
        MoebiusMap m = map_from_json(parse_json_arg(map_arg, "--map"), cfg.field, cfg.dim());
        BoundaryPoint p = boundary_from_json(parse_json_arg(point_arg, "--point"), cfg.field);
        std::cout << boundary_to_json(apply_map(m, p)).dump() << "\n";
        return kExitOk;
    }
    throw Error("eval expects one of: gauge, dist, xratio, map");
}

int run_verify(const GlobalOpts& opts, const std::string& suite, const std::string& metric_arg) {
    RunConfig cfg = opts.config();
    SuiteConfig scfg{cfg.field, cfg.dim(), cfg.samples, cfg.seed, cfg.tol};
    MetricModel metric = metric_from_opts(metric_arg, cfg);
    auto reports = run_suite(suite, scfg, metric);

    bool all_pass = true;
    json suites = json::array();
    for (const auto& r : reports) {
        suites.push_back(report_to_json(r));
        all_pass = all_pass && r.verdict == Verdict::Pass;
    }
    json doc = make_report_document(cfg, std::move(suites));
    if (cfg.format == "text") {
        std::string text;
        for (const auto& r : reports) {
            text += r.condition + ": " + verdict_name(r.verdict);
            if (r.witness) text += "  (worst residual " + std::to_string(r.witness->residual) + ")";
            text += "\n";
        }
        emit(opts, text);
    } else {
        emit(opts, doc.dump(2));
    }
    if (!all_pass) {
        for (const auto& r : reports)
            if (r.verdict != Verdict::Pass && r.witness)
                std::cerr << "worst witness [" << r.condition
                          << "]: " << witness_to_json(*r.witness).dump() << "\n";
        return kExitSuiteFailure;
    }
    return kExitOk;
}

int run_classify(const GlobalOpts& opts, const std::string& models_file,
                 const std::string& models_inline) {
    RunConfig cfg = opts.config();
    std::vector<MetricModel> models;
    if (!models_file.empty() || !models_inline.empty()) {
        json mj;
        if (!models_file.empty()) {
            std::ifstream f(models_file);
            if (!f) throw Error("cannot open models file " + models_file);
            std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
            mj = parse_json_arg(text, "--models");
        } else {
            mj = parse_json_arg(models_inline, "--models-json");
        }
        if (!mj.is_array() || mj.empty()) throw Error("model list must be a nonempty array");
        for (const auto& m : mj) models.push_back(metric_from_json(m, cfg.field, cfg.dim()));
    } else {
        models = default_zoo(cfg.field, cfg.dim());
    }

    auto mat = run_classification(models, cfg.samples, cfg.seed);
    json doc = make_report_document(cfg, json::array(), matrix_to_json(mat));
    emit(opts, cfg.format == "text" ? matrix_to_text(mat) : doc.dump(2));
    return mat.violations.empty() ? kExitOk : kExitSuiteFailure;
}

int run_cc(const GlobalOpts& opts, const std::string& point_arg, const std::string& gauge_norm) {
    RunConfig cfg = opts.config();
    if (cfg.field != Field::C || cfg.n != 2)
        throw MathDomainError("the cc subcommand needs --field C --n 2");
    HPoint p = hpoint_from_json(parse_json_arg(point_arg, "--point"), cfg.field);
    CcGaugeNorm norm = gauge_norm == "scaled16" ? CcGaugeNorm::Scaled16 : CcGaugeNorm::Default;
    double dcc = cc_from_origin(p);
    double ref = cc_reference_gauge(p, norm);
    json doc{{"cc_distance", dcc},
             {"reference_gauge", ref},
             {"ratio", ref > 0 ? dcc / ref : 0.0},
             {"gauge_norm", gauge_norm},
             {"version", kVersion}};
    emit(opts, doc.dump(2));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group boundary geometry: gauge metric, Moebius maps, "
                 "condition classification"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts opts;
    app.add_option("--field", opts.field, "Base algebra: R, C, H or O")->capture_default_str();
    app.add_option("--n", opts.n, "Hyperbolic dimension n (points live in K^(n-1) x Im K)")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "Random seed echoed in reports")->capture_default_str();
    app.add_option("--samples", opts.samples, "Sample count per check")->capture_default_str();
    app.add_option("--tol", opts.tol, "Tolerance override (0 = per-check defaults)");
    app.add_option("--out", opts.out, "Write the report to a file instead of stdout");
    app.add_option("--format", opts.format, "Report format: json or text")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "Evaluate gauge/dist/xratio/map");
    std::string eval_what, point_arg, q_arg, points_arg, map_arg, metric_arg;
    eval->add_option("what", eval_what, "One of gauge|dist|xratio|map")->required();
    eval->add_option("--point", point_arg, "Point JSON {\"zeta\":[[...]],\"v\":[...]}");
    eval->add_option("--q", q_arg, "Second point JSON (dist)");
    eval->add_option("--points", points_arg, "Array of 4 point JSONs (xratio)");
    eval->add_option("--map", map_arg,
                     "Moebius word JSON, rightmost generator applies first (map)");
    eval->add_option("--metric", metric_arg, "Metric model JSON (default: the gauge metric)");

    auto* verify = app.add_subcommand("verify", "Run a named invariant suite");
    std::string suite;
    std::string verify_metric;
    verify->add_option("--suite", suite, "algebra|group|metric-axioms|moebius-invariance|"
                                         "inversion|theorem12|ptolemaean")
        ->required();
    verify->add_option("--metric", verify_metric, "Metric model JSON where applicable");

    auto* classify = app.add_subcommand("classify", "Run the condition classification matrix");
    std::string models_file, models_inline;
    classify->add_option("--models", models_file, "File with a JSON array of metric models");
    classify->add_option("--models-json", models_inline, "Inline JSON array of metric models");

    auto* cc = app.add_subcommand("cc", "CC distance from the origin on H^1 (field C, n = 2)");
    std::string cc_point, cc_norm = "default";
    cc->add_option("--point", cc_point, "Point JSON")->required();
    cc->add_option("--gauge-norm", cc_norm, "default|scaled16")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed())
            return run_eval(opts, eval_what, point_arg, q_arg, points_arg, map_arg, metric_arg);
        if (verify->parsed()) return run_verify(opts, suite, verify_metric);
        if (classify->parsed()) return run_classify(opts, models_file, models_inline);
        if (cc->parsed()) return run_cc(opts, cc_point, cc_norm);
    } catch (const MathDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
