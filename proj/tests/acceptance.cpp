// Acceptance suite: one check per release criterion, each printed as a
// single pass/fail line. Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "heismoeb/json_io.hpp"
#include "heismoeb/suites.hpp"

using namespace heismoeb;

namespace {

const Field kAllFields[] = {Field::R, Field::C, Field::H, Field::O};

std::size_t dim_for(Field f) { return f == Field::O ? 1 : 2; }

struct Criterion {
    int id;
    std::string title;
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. composition law to 1e-12 on 1e4 pairs per field, non-associativity
//    witness found, under 5 s.
Criterion criterion_algebra() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (Field f : kAllFields) {
        RngStream rng(1001, static_cast<std::uint64_t>(f));
        for (int t = 0; t < 10000; ++t) {
            KNum x = random_knum(f, rng, 3.0), y = random_knum(f, rng, 3.0);
            worst = std::max(worst, rel_err(norm(k_mul(x, y)), norm(x) * norm(y)));
        }
    }
    bool witness = false;
    for (int i = 1; i < 8 && !witness; ++i)
        for (int j = 1; j < 8 && !witness; ++j)
            for (int k = 1; k < 8 && !witness; ++k)
                witness = norm(k_mul(k_mul(KNum::basis(Field::O, i), KNum::basis(Field::O, j)),
                                     KNum::basis(Field::O, k)) -
                               k_mul(KNum::basis(Field::O, i),
                                     k_mul(KNum::basis(Field::O, j), KNum::basis(Field::O, k)))) >
                          1e-9;
    double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |xy|-|x||y| residual %.2e, witness %s, %.2f s", worst,
                  witness ? "found" : "missing", dt);
    return {1, "algebra: composition law and non-associativity witness",
            worst < 1e-12 && witness && dt < 5.0, buf};
}

// 2. triangle on 1e5 triples per field with slack >= -1e-10, left invariance
//    and homogeneity to 1e-12, right-invariance dichotomy, under 30 s.
Criterion criterion_metric_axioms() {
    auto t0 = std::chrono::steady_clock::now();
    double min_slack = 0.0, worst_inv = 0.0;
    for (Field f : kAllFields) {
        std::size_t m = dim_for(f);
        RngStream rng(1002, static_cast<std::uint64_t>(f));
        for (int t = 0; t < 100000; ++t) {
            HPoint p = random_hpoint(f, m, rng, 2.0), q = random_hpoint(f, m, rng, 2.0),
                   r = random_hpoint(f, m, rng, 2.0);
            min_slack = std::min(min_slack,
                                 koranyi_dist(p, q) + koranyi_dist(q, r) - koranyi_dist(p, r));
        }
        for (int t = 0; t < 20000; ++t) {
            HPoint a = random_hpoint(f, m, rng), p = random_hpoint(f, m, rng),
                   q = random_hpoint(f, m, rng);
            double d = koranyi_dist(p, q);
            if (d < 1e-9) continue;
            worst_inv = std::max(worst_inv, rel_err(koranyi_dist(h_mul(a, p), h_mul(a, q)), d));
            double delta = std::exp(rng.uniform(-3.0, 3.0));
            worst_inv = std::max(
                worst_inv, rel_err(koranyi_dist(h_dilate(p, delta), h_dilate(q, delta)), delta * d));
        }
    }
    bool right_ok = true;
    {
        RngStream rng(1003);
        for (int t = 0; t < 20000; ++t) {
            HPoint a = random_hpoint(Field::R, 2, rng), p = random_hpoint(Field::R, 2, rng),
                   q = random_hpoint(Field::R, 2, rng);
            double d = koranyi_dist(p, q);
            if (d < 1e-9) continue;
            right_ok = right_ok && rel_err(koranyi_dist(h_mul(p, a), h_mul(q, a)), d) < 1e-12;
        }
        for (Field f : {Field::C, Field::H, Field::O}) {
            std::size_t m = dim_for(f);
            RngStream frng(1004, static_cast<std::uint64_t>(f));
            bool violated = false;
            for (int t = 0; t < 2000 && !violated; ++t) {
                HPoint a = random_hpoint(f, m, frng), p = random_hpoint(f, m, frng),
                       q = random_hpoint(f, m, frng);
                double d = koranyi_dist(p, q);
                violated = d > 1e-6 &&
                           rel_err(koranyi_dist(h_mul(p, a), h_mul(q, a)), d) > 1e-3;
            }
            right_ok = right_ok && violated;
        }
    }
    double dt = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "min triangle slack %.2e, invariance residual %.2e, right-translation "
                  "dichotomy %s, %.2f s",
                  min_slack, worst_inv, right_ok ? "ok" : "broken", dt);
    return {2, "gauge metric axioms and invariances",
            min_slack >= -1e-10 && worst_inv < 1e-12 && right_ok && dt < 30.0, buf};
}

// 3. cross-ratio invariance to 1e-9 under 1e4 random words per run split
//    across the four fields, plus permutation symmetries and the six-value
//    table by brute force.
Criterion criterion_moebius_invariance() {
    double worst = 0.0;
    for (Field f : kAllFields) {
        std::size_t m = dim_for(f);
        SuiteConfig cfg{f, m, 10000, 1005};
        auto reports =
            suite_moebius_invariance(cfg, MetricModel::koranyi_power(f, m, 1.0, 1.0));
        for (const auto& r : reports) {
            worst = std::max(worst, r.constants.at("max_residual"));
            if (r.verdict != Verdict::Pass)
                return {3, "Moebius invariance of the cross-ratio", false,
                        "suite " + r.condition + " failed"};
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max residual %.2e over 4 x 10000 words", worst);
    return {3, "Moebius invariance of the cross-ratio", worst < 1e-9, buf};
}

// 4. inversion identities to 1e-10 on 1e4 samples per field, scaled-metric
//    constant beta^2 = 4 for 2 d, sphere invariance.
Criterion criterion_inversion() {
    double worst = 0.0;
    for (Field f : kAllFields) {
        std::size_t m = dim_for(f);
        RngStream rng(1006, static_cast<std::uint64_t>(f));
        HPoint o = h_origin(f, m);
        for (int t = 0; t < 10000; ++t) {
            HPoint p = sample_point_away_from_origin(f, m, rng);
            HPoint q = sample_point_away_from_origin(f, m, rng);
            worst = std::max(worst,
                             rel_err(koranyi_dist(invert_finite(p), o) * koranyi_dist(p, o), 1.0));
            double expect = koranyi_dist(p, q) / (koranyi_dist(p, o) * koranyi_dist(o, q));
            worst = std::max(
                worst, rel_err(koranyi_dist(invert_finite(p), invert_finite(q)), expect));
        }
    }
    auto rep = verify_inversion_identities(
        MetricModel::koranyi_power(Field::C, 1, 1.0, 2.0), 2000, 1007);
    bool scaled_ok = rel_err(rep.beta_sq, 4.0) < 1e-10 && rep.max_residual() < 1e-10;
    auto sphere = verify_inversion_identities(
        MetricModel::koranyi_power(Field::H, 2, 1.0, 1.0), 2000, 1008);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "identity residual %.2e, beta^2(2d) = %.12g, sphere residual %.2e", worst,
                  rep.beta_sq, sphere.residual_sphere);
    return {4, "inversion identities and sphere invariance",
            worst < 1e-10 && scaled_ok && sphere.residual_sphere < 1e-10, buf};
}

// 5. every displayed equality of the inversion distance chain to 1e-9 for
//    alpha in {0.3, 0.5, 1}, beta in {1, 3}, fields C, H, O; decomposition
//    residual < 1e-10 per field.
Criterion criterion_chain() {
    double worst_chain = 0.0, worst_dec = 0.0;
    for (Field f : {Field::C, Field::H, Field::O}) {
        std::size_t m = dim_for(f);
        for (double alpha : {0.3, 0.5, 1.0})
            for (double beta : {1.0, 3.0}) {
                auto rep = verify_theorem12_chain(MetricModel::koranyi_power(f, m, alpha, beta),
                                                  500, 1009);
                worst_chain = std::max(worst_chain, rep.max_residual());
            }
        RngStream rng(1010, static_cast<std::uint64_t>(f));
        for (int t = 0; t < 2000; ++t)
            worst_dec = std::max(
                worst_dec, verify_inversion_decomposition(
                               sample_point_away_from_origin(f, m, rng)));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "chain residual %.2e, decomposition residual %.2e",
                  worst_chain, worst_dec);
    return {5, "inversion distance chain across the 18-model grid",
            worst_chain < 1e-9 && worst_dec < 1e-10, buf};
}

// 6. G & Eq imply the alpha-Met fit with residual < 1e-8 for every tested
//    left-invariant model; G and PL verdicts agree across the default zoo.
Criterion criterion_theorem13() {
    std::vector<MetricModel> tested = default_zoo(Field::C, 1);
    tested.push_back(MetricModel::koranyi_power(Field::H, 2, 0.7, 1.5));
    tested.push_back(MetricModel::koranyi_power(Field::O, 1, 0.4, 2.0));
    double worst_fit = 0.0;
    int implications = 0;
    for (const auto& model : tested) {
        double alpha = 1.0;
        try {
            alpha = std::clamp(estimate_alpha_beta(model, 400, 1011).alpha, 1e-3, 1.0);
        } catch (const Error&) {
            continue;
        }
        auto g = check_G(model, alpha, 1000, 1012);
        auto eq = check_eq(model);
        if (g.verdict == Verdict::Pass && eq.verdict == Verdict::Pass) {
            auto fit = fit_alpha_met(model, 1000, 1013);
            if (fit.verdict != Verdict::Pass)
                return {6, "split identity + equidistance force a gauge power", false,
                        model.label() + " fails the fit"};
            worst_fit = std::max(worst_fit, fit.constants.at("met_residual"));
            ++implications;
        }
    }
    bool agree = true;
    std::string disagreement;
    for (const auto& model : default_zoo(Field::C, 1)) {
        double alpha = 1.0;
        try {
            alpha = std::clamp(estimate_alpha_beta(model, 400, 1014).alpha, 1e-3, 1.0);
        } catch (const Error&) {
        }
        auto g = check_G(model, alpha, 800, 1015);
        auto pl = check_PL(model, alpha, 800, 1016);
        if (g.verdict != pl.verdict) {
            agree = false;
            disagreement = model.label();
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d implication instances, max fit residual %.2e, G<=>PL %s%s",
                  implications, worst_fit, agree ? "agree" : "disagree on ", disagreement.c_str());
    return {6, "split identity + equidistance force a gauge power",
            implications >= 5 && worst_fit < 1e-8 && agree, buf};
}

// 7. the four-point inequality across alpha in {0.3, 0.5, 0.8, 1}; circle
//    equality at alpha = 1 to 1e-9 with violation witnesses below 1; a
//    triangle violation for the out-of-range probe alpha = 1.4.
Criterion criterion_ptolemaean() {
    for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
        auto rep = check_ptolemaean(MetricModel::koranyi_power(Field::C, 1, alpha, 1.0), 20000,
                                    1017);
        if (rep.verdict != Verdict::Pass)
            return {7, "four-point inequality and circle rigidity", false,
                    "inequality fails at alpha = " + std::to_string(alpha)};
    }
    auto circle1 = check_ptolemaean_circle(MetricModel::koranyi_power(Field::C, 1, 1.0, 1.0),
                                           4000, 1018);
    if (circle1.verdict != Verdict::Pass ||
        circle1.constants.at("max_equality_residual") > 1e-9)
        return {7, "four-point inequality and circle rigidity", false,
                "circle equality fails at alpha = 1"};
    for (double alpha : {0.3, 0.5, 0.8}) {
        auto rep = check_ptolemaean_circle(MetricModel::koranyi_power(Field::C, 1, alpha, 1.0),
                                           2000, 1019);
        if (rep.verdict != Verdict::Fail || !rep.witness)
            return {7, "four-point inequality and circle rigidity", false,
                    "no violation witness at alpha = " + std::to_string(alpha)};
    }
    MetricModel probe = MetricModel::koranyi_power(Field::C, 1, 1.0, 1.0);
    probe.alpha = 1.4;
    RngStream rng(1020);
    bool violation = false;
    long tries = 0;
    for (; tries < 1000000 && !violation; ++tries) {
        HPoint p = random_hpoint(Field::C, 1, rng, 2.0), q = random_hpoint(Field::C, 1, rng, 2.0),
               r = random_hpoint(Field::C, 1, rng, 2.0);
        violation = metric_eval_finite(probe, p, q) + metric_eval_finite(probe, q, r) <
                    metric_eval_finite(probe, p, r) - 1e-9;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "equality residual %.2e at alpha=1, probe violation after %ld samples",
                  circle1.constants.at("max_equality_residual"), tries);
    return {7, "four-point inequality and circle rigidity", violation, buf};
}

// 8. CC solver vs the isoperimetric oracle to 1e-6; ratio windows under both
//    gauge normalizations; the 2^(3/4) bound; under 60 s.
Criterion criterion_cc() {
    auto t0 = std::chrono::steady_clock::now();
    RngStream rng(1021);
    double worst_iso = 0.0;
    for (int t = 0; t < 500; ++t) {
        double v = std::exp(rng.uniform(-6.0, 6.0));
        KVector z(Field::C, 1);
        HPoint vert(z, KNum(Field::C, {0.0, v}));
        double oracle = 2.0 * std::sqrt(M_PI * v / 4.0);
        worst_iso = std::max(worst_iso, rel_err(cc_from_origin(vert), oracle));
    }
    double lo_d = kPlusInfinity, hi_d = 0.0, lo_16 = kPlusInfinity, hi_16 = 0.0;
    double worst_thm_bound = 0.0;
    const double beta1 = std::sqrt(M_PI); // d_cc(o, (0, f1)) under the default frame
    double worst_beta_bound = 0.0;
    for (int t = 0; t < 10000; ++t) {
        HPoint p = sample_point_away_from_origin(Field::C, 1, rng, 4);
        double dcc = cc_from_origin(p);
        double g = koranyi_gauge(p);
        double g16 = cc_reference_gauge(p, CcGaugeNorm::Scaled16);
        lo_d = std::min(lo_d, dcc / g);
        hi_d = std::max(hi_d, dcc / g);
        lo_16 = std::min(lo_16, dcc / g16);
        hi_16 = std::max(hi_16, dcc / g16);
        // Theorem bound with beta1 = 1 in the scaled normalization, and the
        // honest default-frame instance with measured beta1
        worst_thm_bound = std::max(worst_thm_bound, dcc / (std::pow(2.0, 0.75) * g16));
        worst_beta_bound = std::max(worst_beta_bound, dcc / (beta1 * std::pow(2.0, 0.75) * g));
    }
    double dt = seconds_since(t0);
    bool windows = lo_d >= 1.0 - 1e-6 && hi_d <= std::sqrt(M_PI) + 1e-6 &&
                   lo_16 >= 1.0 / std::sqrt(M_PI) - 1e-6 && hi_16 <= 1.0 + 1e-6;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "iso residual %.2e, default ratio [%.6f, %.6f], scaled16 [%.6f, %.6f], "
                  "2^(3/4) bound margin %.3f, %.2f s",
                  worst_iso, lo_d, hi_d, lo_16, hi_16, worst_thm_bound, dt);
    return {8, "CC distance against the gauge",
            worst_iso < 1e-6 && windows && worst_thm_bound <= 1.0 + 1e-9 &&
                worst_beta_bound <= 1.0 + 1e-9 && dt < 60.0,
            buf};
}

// 9. the default zoo reproduces the expected verdict pattern with no
//    implication violations, byte-identically across two runs.
Criterion criterion_classification() {
    auto zoo = default_zoo(Field::C, 1);
    auto m1 = run_classification(zoo, 600, 1022);
    auto m2 = run_classification(zoo, 600, 1022);
    if (matrix_to_json(m1).dump() != matrix_to_json(m2).dump())
        return {9, "classification matrix", false, "reports are not byte-identical"};
    if (!m1.violations.empty())
        return {9, "classification matrix", false,
                "implication audit: " + m1.violations.front()};
    auto verdict = [&](std::size_t row, const std::string& cond) {
        for (const auto& rep : m1.cells[row])
            if (rep.condition == cond) return rep.verdict;
        return Verdict::Inconclusive;
    };
    for (std::size_t r = 0; r < 3; ++r)
        for (const char* cond : {"Sim", "Inv", "G", "PL", "Eq", "BiLip", "AlphaMet", "Ptol"})
            if (verdict(r, cond) != Verdict::Pass)
                return {9, "classification matrix", false,
                        m1.rows[r] + " should pass " + cond};
    for (const char* cond : {"Sim", "TopHeuristic", "BiLip"})
        if (verdict(3, cond) != Verdict::Pass)
            return {9, "classification matrix", false, std::string("cc should pass ") + cond};
    for (const char* cond : {"Inv", "G", "PL", "Eq", "AlphaMet"})
        if (verdict(3, cond) != Verdict::Fail)
            return {9, "classification matrix", false, std::string("cc should fail ") + cond};
    return {9, "classification matrix", true,
            "verdict pattern reproduced, deterministic, zero violations"};
}

// 10. over R the euclidean model is recovered as the gauge metric itself.
Criterion criterion_r_rigidity() {
    auto rep = fit_alpha_met(MetricModel::euclidean_r(2), 2000, 1023);
    double a = rep.constants.at("alpha"), b = rep.constants.at("beta");
    double res = rep.constants.at("met_residual");
    char buf[120];
    std::snprintf(buf, sizeof buf, "alpha = %.12g, beta = %.12g, residual %.2e", a, b, res);
    return {10, "rigidity over R", rep.verdict == Verdict::Pass && std::abs(a - 1.0) < 1e-10 &&
                                       std::abs(b - 1.0) < 1e-10 && res < 1e-10,
            buf};
}

} // namespace

int main() {
    std::vector<Criterion> results = {
        criterion_algebra(),       criterion_metric_axioms(), criterion_moebius_invariance(),
        criterion_inversion(),     criterion_chain(),         criterion_theorem13(),
        criterion_ptolemaean(),    criterion_cc(),            criterion_classification(),
        criterion_r_rigidity(),
    };
    int failures = 0;
    for (const auto& c : results) {
        std::printf("[%s] criterion %2d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), c.detail.c_str());
        failures += c.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
