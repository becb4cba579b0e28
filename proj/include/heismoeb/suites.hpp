#pragma once

#include "heismoeb/conditions.hpp"

// Named invariant suites behind `verify --suite <name>`. Each returns
// ConditionReports; the CLI serializes them and maps failures to exit codes.

namespace heismoeb {

struct SuiteConfig {
    Field field = Field::C;
    std::size_t dim = 1; // n-1
    std::size_t samples = 2000;
    std::uint64_t seed = 0;
    double tol = 0.0; // 0 = per-check defaults

    double tol_or(double fallback) const { return tol > 0.0 ? tol : fallback; }
};

namespace detail {

inline ConditionReport suite_report(std::string name, std::uint64_t samples, std::uint64_t seed,
                                    double worst, double tol, std::string note = {}) {
    ConditionReport r = make_report(std::move(name), samples, seed);
    r.constants["max_residual"] = worst;
    r.constants["tolerance"] = tol;
    r.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    r.note = std::move(note);
    return r;
}

} // namespace detail

/// Composition law, associativity/alternative laws, conjugation, inverses,
/// and the non-associativity witness scan.
inline std::vector<ConditionReport> suite_algebra(const SuiteConfig& cfg) {
    std::vector<ConditionReport> out;
    RngStream rng(cfg.seed, 0x616c67);
    Field f = cfg.field;

    double worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        KNum x = random_knum(f, rng, 3.0), y = random_knum(f, rng, 3.0);
        worst = std::max(worst, rel_err(norm(k_mul(x, y)), norm(x) * norm(y)));
    }
    out.push_back(detail::suite_report("composition_law", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-12)));

    worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        KNum x = random_knum(f, rng), y = random_knum(f, rng);
        KNum lhs = k_conj(k_mul(x, y)) - k_mul(k_conj(y), k_conj(x));
        worst = std::max(worst, norm(lhs));
    }
    out.push_back(detail::suite_report("conjugation_antiautomorphism", cfg.samples, cfg.seed,
                                       worst, cfg.tol_or(1e-12)));

    worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        KNum x = random_knum(f, rng);
        if (norm(x) < 1e-3) continue;
        worst = std::max(worst, norm(k_mul(x, k_inv(x)) - KNum::one(f)));
    }
    out.push_back(detail::suite_report("inverses", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-12)));

    if (f == Field::O) {
        bool found = false;
        for (int i = 1; i < 8 && !found; ++i)
            for (int j = 1; j < 8 && !found; ++j)
                for (int k = 1; k < 8 && !found; ++k) {
                    KNum a = KNum::basis(f, i), b = KNum::basis(f, j), c = KNum::basis(f, k);
                    found = norm(k_mul(k_mul(a, b), c) - k_mul(a, k_mul(b, c))) > 1e-9;
                }
        out.push_back(detail::suite_report("nonassociativity_witness", 343, cfg.seed,
                                           found ? 0.0 : 1.0, 0.5,
                                           found ? "basis witness found" : "no witness found"));
        worst = 0.0;
        for (std::size_t t = 0; t < cfg.samples; ++t) {
            KNum x = random_knum(f, rng), y = random_knum(f, rng);
            worst = std::max(worst, norm(k_mul(x, k_mul(x, y)) - k_mul(k_mul(x, x), y)));
            worst = std::max(worst, norm(k_mul(k_mul(y, x), x) - k_mul(y, k_mul(x, x))));
        }
        out.push_back(detail::suite_report("alternative_laws", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-11)));
    } else {
        worst = 0.0;
        for (std::size_t t = 0; t < cfg.samples; ++t) {
            KNum x = random_knum(f, rng), y = random_knum(f, rng), z = random_knum(f, rng);
            worst = std::max(worst, norm(k_mul(k_mul(x, y), z) - k_mul(x, k_mul(y, z))));
        }
        out.push_back(detail::suite_report("associativity", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-12)));
    }
    return out;
}

/// Group axioms, invariances of the gauge metric, the right-translation
/// dichotomy, and dilation homogeneity.
inline std::vector<ConditionReport> suite_group(const SuiteConfig& cfg) {
    std::vector<ConditionReport> out;
    RngStream rng(cfg.seed, 0x677270);
    Field f = cfg.field;
    std::size_t m = cfg.dim;

    double worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint p = random_hpoint(f, m, rng), q = random_hpoint(f, m, rng),
               r = random_hpoint(f, m, rng);
        worst = std::max(worst, coord_rel_residual(h_mul(h_mul(p, q), r), h_mul(p, h_mul(q, r))));
        worst = std::max(worst, koranyi_gauge(h_mul(p, h_inv(p))));
    }
    out.push_back(detail::suite_report("group_axioms", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-12)));

    worst = 0.0;
    double worst_dil = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint a = random_hpoint(f, m, rng), p = random_hpoint(f, m, rng),
               q = random_hpoint(f, m, rng);
        double d = koranyi_dist(p, q);
        if (d < 1e-9) continue;
        worst = std::max(worst, rel_err(koranyi_dist(h_mul(a, p), h_mul(a, q)), d));
        double delta = std::exp(rng.uniform(-3.0, 3.0));
        worst_dil = std::max(
            worst_dil, rel_err(koranyi_dist(h_dilate(p, delta), h_dilate(q, delta)), delta * d));
    }
    out.push_back(detail::suite_report("left_invariance", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-12)));
    out.push_back(detail::suite_report("dilation_homogeneity", cfg.samples, cfg.seed, worst_dil,
                                       cfg.tol_or(1e-12)));

    if (f == Field::R) {
        worst = 0.0;
        for (std::size_t t = 0; t < cfg.samples; ++t) {
            HPoint a = random_hpoint(f, m, rng), p = random_hpoint(f, m, rng),
                   q = random_hpoint(f, m, rng);
            double d = koranyi_dist(p, q);
            if (d < 1e-9) continue;
            worst = std::max(worst, rel_err(koranyi_dist(h_mul(p, a), h_mul(q, a)), d));
        }
        out.push_back(detail::suite_report("right_invariance", cfg.samples, cfg.seed, worst,
                                           cfg.tol_or(1e-12),
                                           "right translations are isometries over R"));
    } else {
        double best_violation = 0.0;
        for (std::size_t t = 0; t < cfg.samples; ++t) {
            HPoint a = random_hpoint(f, m, rng), p = random_hpoint(f, m, rng),
                   q = random_hpoint(f, m, rng);
            double d = koranyi_dist(p, q);
            if (d < 1e-6) continue;
            best_violation = std::max(
                best_violation, rel_err(koranyi_dist(h_mul(p, a), h_mul(q, a)), d));
        }
        auto rep = detail::make_report("right_invariance_counterexample", cfg.samples, cfg.seed);
        rep.constants["max_deviation"] = best_violation;
        rep.verdict = best_violation > 1e-3 ? Verdict::Pass : Verdict::Fail;
        rep.note = "a right translation must move some distance";
        out.push_back(std::move(rep));
    }

    worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint p = random_hpoint(f, m, rng, 4.0);
        double g = koranyi_gauge(p);
        worst = std::max(worst, rel_err(koranyi_gauge(h_inv(p)), g));
        worst = std::max(worst, rel_err(koranyi_gauge(h_conjugate(p)), g));
    }
    out.push_back(detail::suite_report("gauge_parity", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-14)));
    return out;
}

/// Metric axioms for the gauge metric, triangle inequality on random triples.
inline std::vector<ConditionReport> suite_metric_axioms(const SuiteConfig& cfg) {
    std::vector<ConditionReport> out;
    RngStream rng(cfg.seed, 0x6d7472);
    Field f = cfg.field;
    std::size_t m = cfg.dim;
    double worst_sym = 0.0, worst_tri = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint p = random_hpoint(f, m, rng, 2.0), q = random_hpoint(f, m, rng, 2.0),
               r = random_hpoint(f, m, rng, 2.0);
        worst_sym = std::max(worst_sym, rel_err(koranyi_dist(p, q), koranyi_dist(q, p)));
        worst_tri = std::min(worst_tri, koranyi_dist(p, q) + koranyi_dist(q, r) - koranyi_dist(p, r));
    }
    out.push_back(detail::suite_report("symmetry", cfg.samples, cfg.seed, worst_sym, cfg.tol_or(1e-12)));
    out.push_back(detail::suite_report("triangle_inequality", cfg.samples, cfg.seed, -worst_tri,
                                       cfg.tol_or(1e-10)));
    return out;
}

/// Cross-ratio invariance under random generator words plus the permutation
/// symmetry table.
inline std::vector<ConditionReport> suite_moebius_invariance(const SuiteConfig& cfg,
                                                             const MetricModel& metric) {
    std::vector<ConditionReport> out;
    RngStream rng(cfg.seed, 0x786372);
    Field f = cfg.field;
    std::size_t m = cfg.dim;

    double worst = 0.0;
    std::size_t done = 0;
    while (done < cfg.samples) {
        MoebiusMap w = random_word(f, m, 1 + done % 5, rng);
        std::array<BoundaryPoint, 4> q, wq;
        bool ok = true;
        for (auto& x : q) x = BoundaryPoint(sample_point_away_from_origin(f, m, rng, 2));
        for (int i = 0; i < 4 && ok; ++i) {
            wq[i] = apply_map(w, q[i]);
            for (int j = 0; j < i; ++j) ok = ok && !approx_eq(wq[i], wq[j], 1e-9);
        }
        if (!ok) continue;
        auto a = cross_ratio_pair(metric, q);
        auto b = cross_ratio_pair(metric, wq);
        worst = std::max(worst, std::max(rel_err(a.x1, b.x1), rel_err(a.x2, b.x2)));
        ++done;
    }
    out.push_back(detail::suite_report("cross_ratio_word_invariance", cfg.samples, cfg.seed,
                                       worst, cfg.tol_or(1e-9)));

    worst = 0.0;
    for (std::size_t t = 0; t < std::max<std::size_t>(64, cfg.samples / 8); ++t) {
        std::array<BoundaryPoint, 4> q;
        for (auto& x : q) x = BoundaryPoint(random_hpoint(f, m, rng, 3.0));
        double x1 = cross_ratio_pair(metric, q).x1;
        std::array<BoundaryPoint, 4> perms[3] = {{q[1], q[0], q[3], q[2]},
                                                 {q[2], q[3], q[0], q[1]},
                                                 {q[3], q[2], q[1], q[0]}};
        for (const auto& perm : perms)
            worst = std::max(worst, rel_err(cross_ratio_pair(metric, perm).x1, x1));
        auto table = six_values(cross_ratio_pair(metric, q));
        auto direct = [&](int a, int b, int c, int d) {
            std::array<BoundaryPoint, 4> perm = {q[a], q[b], q[c], q[d]};
            return cross_ratio_pair(metric, perm).x1;
        };
        const int idx[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 2, 3, 1},
                               {0, 3, 2, 1}, {0, 1, 3, 2}, {0, 3, 1, 2}};
        for (int k = 0; k < 6; ++k)
            worst = std::max(worst,
                             rel_err(table[k], direct(idx[k][0], idx[k][1], idx[k][2], idx[k][3])));
    }
    out.push_back(detail::suite_report("cross_ratio_symmetries", cfg.samples, cfg.seed, worst,
                                       cfg.tol_or(1e-10)));
    return out;
}

/// Inversion involution, gauge identity, the two identities of the inversion
/// lemma, and sphere invariance.
inline std::vector<ConditionReport> suite_inversion(const SuiteConfig& cfg,
                                                    const MetricModel& metric) {
    std::vector<ConditionReport> out;
    RngStream rng(cfg.seed, 0x696e73);
    Field f = cfg.field;
    std::size_t m = cfg.dim;

    double worst = 0.0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint p = sample_point_away_from_origin(f, m, rng);
        worst = std::max(worst, coord_rel_residual(invert_finite(invert_finite(p)), p));
    }
    out.push_back(detail::suite_report("involution", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-10)));

    worst = 0.0;
    HPoint o = h_origin(f, m);
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        HPoint p = sample_point_away_from_origin(f, m, rng);
        worst = std::max(worst,
                         rel_err(koranyi_dist(invert_finite(p), o), 1.0 / koranyi_dist(p, o)));
    }
    out.push_back(detail::suite_report("gauge_identity", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-10)));

    out.push_back(check_inv(metric, cfg.samples, cfg.seed));

    worst = 0.0;
    for (std::size_t t = 0; t < std::max<std::size_t>(64, cfg.samples / 4); ++t) {
        HPoint p = sample_point_away_from_origin(f, m, rng);
        worst = std::max(worst, verify_inversion_decomposition(p));
    }
    out.push_back(detail::suite_report("decomposition", cfg.samples, cfg.seed, worst, cfg.tol_or(1e-10)));
    return out;
}

/// The full displayed chain for d(I(p), o) under gauge-power metrics.
inline std::vector<ConditionReport> suite_theorem12(const SuiteConfig& cfg,
                                                    const MetricModel& metric) {
    std::vector<ConditionReport> out;
    MetricModel model = metric.kind == MetricKind::KoranyiPower
                            ? metric
                            : MetricModel::koranyi_power(cfg.field, cfg.dim, 1.0, 1.0);
    auto chain = verify_theorem12_chain(model, cfg.samples, cfg.seed);
    auto rep = detail::suite_report("inversion_distance_chain", cfg.samples, cfg.seed,
                                    chain.max_residual(), cfg.tol_or(1e-9));
    rep.constants["link_residual"] = chain.max_link_residual;
    rep.constants["conclusion_residual"] = chain.max_conclusion_residual;
    out.push_back(std::move(rep));
    return out;
}

/// Four-point inequality plus the candidate circle equality.
inline std::vector<ConditionReport> suite_ptolemaean(const SuiteConfig& cfg,
                                                     const MetricModel& metric) {
    std::vector<ConditionReport> out;
    out.push_back(check_ptolemaean(metric, cfg.samples, cfg.seed));
    out.push_back(check_ptolemaean_circle(metric, cfg.samples, cfg.seed));
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "algebra",   "group",     "metric-axioms", "moebius-invariance",
        "inversion", "theorem12", "ptolemaean"};
    return names;
}

inline std::vector<ConditionReport> run_suite(const std::string& name, const SuiteConfig& cfg,
                                              const MetricModel& metric) {
    if (name == "algebra") return suite_algebra(cfg);
    if (name == "group") return suite_group(cfg);
    if (name == "metric-axioms") return suite_metric_axioms(cfg);
    if (name == "moebius-invariance") return suite_moebius_invariance(cfg, metric);
    if (name == "inversion") return suite_inversion(cfg, metric);
    if (name == "theorem12") return suite_theorem12(cfg, metric);
    if (name == "ptolemaean") return suite_ptolemaean(cfg, metric);
    throw Error("unknown suite '" + name + "'");
}

} // namespace heismoeb
