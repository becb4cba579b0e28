#pragma once

#include <future>
#include <map>
#include <string>
#include <vector>

#include "heismoeb/moebius.hpp"

namespace heismoeb {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ConditionWitness {
    std::vector<BoundaryPoint> points;
    double residual = 0.0;
    std::string note;
};

struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::map<std::string, double> constants;
    std::optional<ConditionWitness> witness;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string note;
};

/// Residual tolerance for a model; CC values are solver-limited.
inline double residual_tol(const MetricModel& m) {
    return m.kind == MetricKind::CCH1 ? 1e-6 : 1e-8;
}

namespace detail {

inline ConditionReport make_report(std::string condition, std::uint64_t samples,
                                   std::uint64_t seed) {
    ConditionReport r;
    r.condition = std::move(condition);
    r.samples = samples;
    r.seed = seed;
    return r;
}

} // namespace detail

// ---- (Sim) -----------------------------------------------------------------

/// Samples gauge-metric similarities (translations, rotations, the Sp(1) and
/// S_mu actions, conjugation over R/C, dilations) and checks they scale d by
/// a constant: isometries by 1, each D_delta by a per-delta constant.
inline ConditionReport check_sim_invariance(const MetricModel& model, std::size_t samples,
                                            std::uint64_t seed) {
    auto rep = detail::make_report("Sim", samples, seed);
    RngStream rng(seed, 0x53696d);
    const Field f = model.field;
    const std::size_t m = model.dim;
    const double tol = std::max(1e-8, 10.0 * residual_tol(model));

    double worst_iso = 0.0;
    std::optional<ConditionWitness> witness;
    std::size_t n_iso = std::max<std::size_t>(16, samples / 4);
    std::size_t accepted = 0;
    while (accepted < n_iso) {
        MoebiusMap map(f, m);
        double pick = rng.uniform01();
        std::string kind;
        if (pick < 0.4) {
            map.push(Translate{random_hpoint(f, m, rng, 3.0)});
            kind = "translation";
        } else if (pick < 0.7) {
            if (f == Field::O) { map.push(RotateOct{random_unit_imag(f, rng)}); kind = "rotation S_mu"; }
            else { map.push(Rotate{random_rotation(f, m, rng)}); kind = "rotation"; }
        } else if (pick < 0.85 && f == Field::H) {
            map.push(RotateQuat{random_unit(f, rng)});
            kind = "Sp(1) rotation";
        } else if (f == Field::R || f == Field::C) {
            // componentwise conjugation is a gauge isometry only over R and C
            map.push(Conjugate{});
            kind = "conjugation";
        } else {
            map.push(Translate{random_hpoint(f, m, rng, 3.0)});
            kind = "translation";
        }
        HPoint p = sample_point(f, m, rng);
        HPoint q = sample_point(f, m, rng);
        double base = metric_eval_finite(model, p, q);
        if (base < 1e-9) continue;
        ++accepted;
        double r = metric_eval(model, apply_map(map, BoundaryPoint(p)),
                               apply_map(map, BoundaryPoint(q))) / base;
        double dev = std::abs(r - 1.0);
        if (dev > worst_iso) {
            worst_iso = dev;
            if (dev > tol)
                witness = ConditionWitness{{BoundaryPoint(p), BoundaryPoint(q)}, dev,
                                           kind + " scales d by " + std::to_string(r)};
        }
    }
    rep.constants["max_isometry_deviation"] = worst_iso;

    bool dilations_ok = true;
    std::size_t pairs = std::max<std::size_t>(8, samples / 64);
    for (int k = -8; k <= 8 && dilations_ok; ++k) {
        if (k == 0) continue;
        double delta = std::ldexp(1.0, k);
        double lo = kPlusInfinity, hi = 0.0;
        std::pair<HPoint, HPoint> hi_pair{h_origin(f, m), h_origin(f, m)};
        std::size_t accepted = 0;
        while (accepted < pairs) {
            HPoint p = random_hpoint(f, m, rng);
            HPoint q = random_hpoint(f, m, rng);
            double base = metric_eval_finite(model, p, q);
            if (base < 1e-9) continue;
            double r = metric_eval_finite(model, h_dilate(p, delta), h_dilate(q, delta)) / base;
            lo = std::min(lo, r);
            if (r > hi) { hi = r; hi_pair = {p, q}; }
            ++accepted;
        }
        if ((hi - lo) / hi > tol) {
            dilations_ok = false;
            rep.note = "dilation ratio not constant at delta = " + std::to_string(delta);
            witness = ConditionWitness{{BoundaryPoint(hi_pair.first), BoundaryPoint(hi_pair.second)},
                                       (hi - lo) / hi, "extreme dilation ratio pair"};
        } else if (std::abs(k) == 1 || std::abs(k) == 8) {
            rep.constants["K(2^" + std::to_string(k) + ")"] = 0.5 * (lo + hi);
        }
    }

    rep.verdict = (worst_iso <= tol && dilations_ok) ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (Top) heuristic ---------------------------------------------------------

/// Probes sequences p_nu -> p that converge geometrically in the gauge metric
/// and requires d(p_nu, p) -> 0 below a decay envelope. A sampler cannot
/// certify a topological statement, so the verdict is pass/inconclusive
/// unless a stalled sequence demonstrates failure.
inline ConditionReport check_top_heuristic(const MetricModel& model, std::size_t samples,
                                           std::uint64_t seed) {
    auto rep = detail::make_report("TopHeuristic", samples, seed);
    RngStream rng(seed, 0x546f70);
    const std::size_t n_seq = std::min<std::size_t>(64, std::max<std::size_t>(8, samples / 64));
    const int steps = 30;
    bool all_converged = true;
    for (std::size_t s = 0; s < n_seq; ++s) {
        HPoint p = random_hpoint(model.field, model.dim, rng, 2.0);
        HPoint u = sample_point_away_from_origin(model.field, model.dim, rng, 0);
        // purely horizontal approach directions expose vertical-slice jumps
        if (s % 4 == 0) u = h_split(u).first;
        if (koranyi_gauge(u) < 1e-6) continue;
        std::vector<double> d(steps + 1);
        for (int k = 0; k <= steps; ++k)
            d[k] = metric_eval_finite(model, h_mul(p, h_dilate(u, std::ldexp(1.0, -k))), p);
        double head = 0.0, tail = kPlusInfinity;
        for (int k = 5; k <= 10; ++k) head = std::max(head, d[k]);
        for (int k = steps - 5; k <= steps; ++k) tail = std::min(tail, d[k]);
        if (tail == 0.0 || head == 0.0) continue;
        double decay = tail / head;
        if (decay >= 0.5 && tail > 1e-9) {
            rep.verdict = Verdict::Fail;
            rep.constants["stalled_value"] = tail;
            rep.witness = ConditionWitness{
                {BoundaryPoint(p), BoundaryPoint(h_mul(p, h_dilate(u, std::ldexp(1.0, -steps))))},
                tail, "gauge-convergent sequence with d stalled"};
            return rep;
        }
        if (decay > 0.1) all_converged = false;
    }
    rep.verdict = all_converged ? Verdict::Pass : Verdict::Inconclusive;
    return rep;
}

// ---- (Inv) --------------------------------------------------------------------

inline ConditionReport check_inv(const MetricModel& model, std::size_t samples,
                                 std::uint64_t seed) {
    auto rep = detail::make_report("Inv", samples, seed);
    const double tol = std::max(1e-8, 10.0 * residual_tol(model));
    try {
        auto inv = verify_inversion_identities(model, samples, seed);
        rep.constants["beta_sq"] = inv.beta_sq;
        rep.constants["residual_product"] = inv.residual_product;
        rep.constants["residual_two_point"] = inv.residual_two_point;
        rep.constants["residual_sphere"] = inv.residual_sphere;
        rep.verdict = inv.max_residual() < tol ? Verdict::Pass : Verdict::Fail;
        if (rep.verdict == Verdict::Fail && inv.worst)
            rep.witness = ConditionWitness{{BoundaryPoint(*inv.worst)}, inv.max_residual(),
                                           "inversion identity residual"};
    } catch (const Error& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = e.what();
    }
    return rep;
}

// ---- (alpha-Hoel) ---------------------------------------------------------------

/// Verifies d(p,q) <= beta1 2^((4-alpha)/4) d_gauge^alpha(p,q) on box samples
/// at two scales. The growth of the empirical ratio between the scales is
/// reported: a bounded box cannot certify uniformity.
inline ConditionReport check_alpha_holder(const MetricModel& model, double alpha,
                                          std::size_t samples, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw MathDomainError("alpha must lie in (0, 1]");
    auto rep = detail::make_report("AlphaHoelder", samples, seed);
    RngStream rng(seed, 0x486f65);
    HPoint o = h_origin(model.field, model.dim);
    double beta1 = metric_eval_finite(model, h_unit_horizontal(model.field, model.dim), o);
    if (model.field != Field::R)
        beta1 = std::max(beta1,
                         metric_eval_finite(model, h_unit_vertical(model.field, model.dim), o));
    const double bound = beta1 * std::pow(2.0, (4.0 - alpha) / 4.0);
    const double tol = residual_tol(model);

    // the bound is calibrated by the unit points, so the verdict comes from
    // the unit box; the wide box feeds the non-uniformity diagnostic
    double ratio_small = 0.0, ratio_large = 0.0, worst_excess = 0.0;
    std::optional<ConditionWitness> witness;
    for (std::size_t i = 0; i < samples; ++i) {
        double scale = i % 2 == 0 ? 1.0 : 10.0;
        HPoint p = random_hpoint(model.field, model.dim, rng, scale);
        HPoint q = random_hpoint(model.field, model.dim, rng, scale);
        double base = std::pow(koranyi_dist(p, q), alpha);
        if (base < 1e-12) continue;
        double ratio = metric_eval_finite(model, p, q) / base;
        double& slot = scale == 1.0 ? ratio_small : ratio_large;
        slot = std::max(slot, ratio);
        if (scale != 1.0) continue;
        double excess = ratio / bound - 1.0;
        if (excess > worst_excess) {
            worst_excess = excess;
            witness = ConditionWitness{{BoundaryPoint(p), BoundaryPoint(q)}, excess,
                                       "ratio above the Hoelder bound"};
        }
    }
    rep.constants["alpha"] = alpha;
    rep.constants["beta1"] = beta1;
    rep.constants["bound_constant"] = bound;
    rep.constants["max_ratio"] = std::max(ratio_small, ratio_large);
    double growth = ratio_small > 0.0 ? ratio_large / ratio_small : 0.0;
    rep.constants["ratio_growth"] = growth;
    if (growth > 1.5) rep.note = "ratio grows with the sample box; bound is not uniform";
    rep.verdict = worst_excess <= tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (G) -------------------------------------------------------------------

/// d^(4/alpha)(o,p) = d^(4/alpha)(o,(z,0)) + d^(4/alpha)(o,(0,v)). Vacuous
/// over R. The literal pairing d((z,0),(0,v)) is evaluated alongside; the two
/// readings agree exactly for left-invariant d, and both are reported.
inline ConditionReport check_G(const MetricModel& model, double alpha, std::size_t samples,
                               std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw MathDomainError("alpha must lie in (0, 1]");
    auto rep = detail::make_report("G", samples, seed);
    if (model.field == Field::R) {
        rep.verdict = Verdict::Pass;
        rep.note = "vacuous over R";
        return rep;
    }
    RngStream rng(seed, 0x472020);
    HPoint o = h_origin(model.field, model.dim);
    const double e = 4.0 / alpha;
    const double tol = residual_tol(model);
    double worst = 0.0, worst_literal = 0.0;
    std::optional<ConditionWitness> witness;
    for (std::size_t i = 0; i < samples; ++i) {
        HPoint p = sample_point(model.field, model.dim, rng);
        auto [horizontal, vertical] = h_split(p);
        double dp = metric_eval_finite(model, p, o);
        if (dp < 1e-30) continue;
        // normalize before raising to 4/alpha so large samples cannot overflow
        double lhs = 1.0;
        double rhs = std::pow(metric_eval_finite(model, horizontal, o) / dp, e) +
                     std::pow(metric_eval_finite(model, vertical, o) / dp, e);
        double rhs_lit = std::pow(metric_eval_finite(model, horizontal, o) / dp, e) +
                         std::pow(metric_eval_finite(model, horizontal, vertical) / dp, e);
        double res = std::abs(lhs - rhs);
        worst_literal = std::max(worst_literal, std::abs(lhs - rhs_lit));
        if (!std::isfinite(res)) res = kPlusInfinity;
        if (res > worst) {
            worst = res;
            if (res > tol)
                witness = ConditionWitness{{BoundaryPoint(p)}, res, "quartic split residual"};
        }
    }
    rep.constants["alpha"] = alpha;
    rep.constants["max_residual"] = worst;
    rep.constants["max_residual_literal_reading"] = worst_literal;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (P-L) -------------------------------------------------------------------

/// The four-point parallelogram-type identity equivalent to (G) under (Sim).
inline ConditionReport check_PL(const MetricModel& model, double alpha, std::size_t samples,
                                std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw MathDomainError("alpha must lie in (0, 1]");
    auto rep = detail::make_report("PL", samples, seed);
    if (model.field == Field::R) {
        rep.verdict = Verdict::Pass;
        rep.note = "vacuous over R";
        return rep;
    }
    RngStream rng(seed, 0x504c20);
    HPoint o = h_origin(model.field, model.dim);
    const double e = 4.0 / alpha;
    const double tol = residual_tol(model);
    auto h_norm = [&](const HPoint& x) { return metric_eval_finite(model, x, o); };
    double worst = 0.0;
    std::optional<ConditionWitness> witness;
    for (std::size_t i = 0; i < samples; ++i) {
        HPoint p = sample_point(model.field, model.dim, rng);
        HPoint q = sample_point(model.field, model.dim, rng);
        std::array<HPoint, 4> prods = {h_mul(p, q), h_mul(h_inv(p), q), h_mul(p, h_inv(q)),
                                       h_mul(h_inv(p), h_inv(q))};
        double scale = 0.0;
        for (const auto& x : prods) scale = std::max(scale, h_norm(x));
        if (scale < 1e-30) continue;
        // all ratios below are <= 1 for a metric, so powers stay bounded
        double lhs = 0.0;
        for (const auto& x : prods) lhs += std::pow(h_norm(x) / scale, e);
        double rhs = 2.0 * (std::pow(h_norm(h_split(prods[0]).first) / scale, e) +
                            std::pow(h_norm(h_split(prods[1]).first) / scale, e));
        for (const auto& x : prods) rhs += std::pow(h_norm(h_split(x).second) / scale, e);
        double res = std::abs(lhs - rhs) / lhs;
        if (!std::isfinite(res)) res = kPlusInfinity;
        if (res > worst) {
            worst = res;
            if (res > tol)
                witness = ConditionWitness{{BoundaryPoint(p), BoundaryPoint(q)}, res,
                                           "four-point identity residual"};
        }
    }
    rep.constants["alpha"] = alpha;
    rep.constants["max_residual"] = worst;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (Eq) --------------------------------------------------------------------

inline ConditionReport check_eq(const MetricModel& model) {
    auto rep = detail::make_report("Eq", 1, 0);
    if (model.field == Field::R) {
        rep.verdict = Verdict::Pass;
        rep.note = "vacuous over R";
        return rep;
    }
    HPoint o = h_origin(model.field, model.dim);
    double dh = metric_eval_finite(model, h_unit_horizontal(model.field, model.dim), o);
    double dv = metric_eval_finite(model, h_unit_vertical(model.field, model.dim), o);
    rep.constants["d_horizontal_unit"] = dh;
    rep.constants["d_vertical_unit"] = dv;
    rep.verdict = std::abs(dh - dv) < 1e-10 * std::max(dh, dv) ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail)
        rep.witness = ConditionWitness{{BoundaryPoint(h_unit_horizontal(model.field, model.dim)),
                                        BoundaryPoint(h_unit_vertical(model.field, model.dim))},
                                       std::abs(dh - dv), "unit points are not equidistant"};
    return rep;
}

// ---- (biLip) -----------------------------------------------------------------

/// Empirical inf/sup of d / d_gauge^alpha. The second pass doubles the sample
/// count and widens the dilation spread; a homogeneity mismatch shows up as
/// instability of the extremes.
inline ConditionReport check_biLip(const MetricModel& model, double alpha, std::size_t samples,
                                   std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw MathDomainError("alpha must lie in (0, 1]");
    auto rep = detail::make_report("BiLip", samples, seed);
    struct Scan {
        double lo = kPlusInfinity, hi = 0.0;
        std::pair<HPoint, HPoint> hi_pair;
    };
    auto scan = [&](std::size_t count, int span, std::uint64_t salt) {
        RngStream rng(seed, 0x62694c, salt);
        HPoint o = h_origin(model.field, model.dim);
        Scan s;
        s.hi_pair = {o, o};
        std::size_t accepted = 0;
        while (accepted < count) {
            HPoint p = sample_point(model.field, model.dim, rng, span);
            HPoint q = sample_point(model.field, model.dim, rng, span);
            // axis-aligned probes pin the extremes that box sampling only
            // creeps towards (ratio extremes of homogeneous models sit on
            // the horizontal/vertical axes)
            if (accepted % 8 == 3) { p = h_split(p).second; q = o; }
            if (accepted % 8 == 7) { p = h_split(p).first; q = o; }
            double base = std::pow(koranyi_dist(p, q), alpha);
            if (base < 1e-12) { ++accepted; continue; }
            double r = metric_eval_finite(model, p, q) / base;
            s.lo = std::min(s.lo, r);
            if (r > s.hi) { s.hi = r; s.hi_pair = {p, q}; }
            ++accepted;
        }
        return s;
    };
    Scan s1 = scan(samples, 8, 1);
    Scan s2 = scan(2 * samples, 16, 2);
    rep.constants["alpha"] = alpha;
    rep.constants["inf_ratio"] = s2.lo;
    rep.constants["sup_ratio"] = s2.hi;
    double stab_hi = s2.hi / s1.hi, stab_lo = s1.lo / s2.lo;
    rep.constants["stability_sup"] = stab_hi;
    rep.constants["stability_inf"] = stab_lo;
    bool ok = s2.lo > 0.0 && std::isfinite(s2.hi) && stab_hi < 1.05 && stab_lo < 1.05;
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    if (!ok) {
        rep.note = "ratio extremes drift as the dilation spread widens";
        rep.witness = ConditionWitness{{BoundaryPoint(s2.hi_pair.first),
                                        BoundaryPoint(s2.hi_pair.second)},
                                       stab_hi, "pair attaining the drifting supremum"};
    }
    return rep;
}

// ---- (alpha-Met) ---------------------------------------------------------------

/// Fits alpha from the dilation homomorphism and beta from the horizontal
/// unit point, then demands d = beta d_gauge^alpha pointwise.
inline ConditionReport fit_alpha_met(const MetricModel& model, std::size_t samples,
                                     std::uint64_t seed) {
    auto rep = detail::make_report("AlphaMet", samples, seed);
    FitResult fit;
    try {
        fit = estimate_alpha_beta(model, samples, seed);
    } catch (const NotDilationCompatible& e) {
        rep.verdict = Verdict::Fail;
        rep.note = e.what();
        // demonstrate with the pair whose dilation ratio deviates most
        RngStream wrng(seed, 0x776974);
        double lo = kPlusInfinity, hi = 0.0;
        std::pair<HPoint, HPoint> hi_pair{h_origin(model.field, model.dim),
                                          h_origin(model.field, model.dim)};
        for (int t = 0; t < 64; ++t) {
            HPoint p = random_hpoint(model.field, model.dim, wrng);
            HPoint q = random_hpoint(model.field, model.dim, wrng);
            double base = metric_eval_finite(model, p, q);
            if (base < 1e-9) continue;
            double r = metric_eval_finite(model, h_dilate(p, 2.0), h_dilate(q, 2.0)) / base;
            lo = std::min(lo, r);
            if (r > hi) { hi = r; hi_pair = {p, q}; }
        }
        rep.witness = ConditionWitness{{BoundaryPoint(hi_pair.first), BoundaryPoint(hi_pair.second)},
                                       hi > 0 ? (hi - lo) / hi : 0.0,
                                       "dilation ratio spread witness"};
        return rep;
    }
    rep.constants["alpha"] = fit.alpha;
    rep.constants["beta"] = fit.beta;
    rep.constants["fit_residual"] = fit.residual;
    const double tol = std::max(1e-8, 10.0 * residual_tol(model));
    RngStream rng(seed, 0x414d65);
    double worst = 0.0;
    std::optional<ConditionWitness> witness;
    std::size_t accepted = 0;
    while (accepted < samples) {
        HPoint p = sample_point(model.field, model.dim, rng);
        HPoint q = sample_point(model.field, model.dim, rng);
        double expect = fit.beta * std::pow(koranyi_dist(p, q), fit.alpha);
        if (expect < 1e-12) continue;
        ++accepted;
        double res = std::abs(metric_eval_finite(model, p, q) - expect) / expect;
        if (res > worst) {
            worst = res;
            if (res > tol)
                witness = ConditionWitness{{BoundaryPoint(p), BoundaryPoint(q)}, res,
                                           "not a constant multiple of a gauge power"};
        }
    }
    rep.constants["met_residual"] = worst;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (Ptol) --------------------------------------------------------------------

/// d(p,r) d(q,s) <= d(p,q) d(r,s) + d(p,s) d(r,q) over all three pairings of
/// sampled quadruples.
inline ConditionReport check_ptolemaean(const MetricModel& model, std::size_t samples,
                                        std::uint64_t seed) {
    auto rep = detail::make_report("Ptol", samples, seed);
    RngStream rng(seed, 0x50746f);
    const double tol = model.kind == MetricKind::CCH1 ? 1e-6 : 1e-10;
    double min_slack = kPlusInfinity;
    std::optional<ConditionWitness> witness;
    for (std::size_t i = 0; i < samples; ++i) {
        std::array<HPoint, 4> pts;
        for (auto& x : pts) x = sample_point(model.field, model.dim, rng, 4);
        double d01 = metric_eval_finite(model, pts[0], pts[1]);
        double d02 = metric_eval_finite(model, pts[0], pts[2]);
        double d03 = metric_eval_finite(model, pts[0], pts[3]);
        double d12 = metric_eval_finite(model, pts[1], pts[2]);
        double d13 = metric_eval_finite(model, pts[1], pts[3]);
        double d23 = metric_eval_finite(model, pts[2], pts[3]);
        // the three pairings, each normalized by its right-hand side
        std::array<std::array<double, 3>, 3> cases = {{{d02 * d13, d01 * d23, d03 * d12},
                                                       {d01 * d23, d02 * d13, d03 * d12},
                                                       {d03 * d12, d01 * d23, d02 * d13}}};
        for (const auto& c : cases) {
            double rhs = c[1] + c[2];
            if (rhs < 1e-290) continue;
            double slack = (rhs - c[0]) / rhs;
            if (slack < min_slack) {
                min_slack = slack;
                if (slack < -tol)
                    witness = ConditionWitness{{BoundaryPoint(pts[0]), BoundaryPoint(pts[1]),
                                                BoundaryPoint(pts[2]), BoundaryPoint(pts[3])},
                                               slack, "four-point inequality violated"};
            }
        }
        if (witness) break;
    }
    rep.constants["min_relative_slack"] = min_slack;
    rep.verdict = min_slack >= -tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- (Circ) --------------------------------------------------------------------

/// Tests the candidate circle {(t e_1, 0)} u {inf}: separated quadruples must
/// attain four-point equality. Quadruples through the remote point are
/// normalized to the additivity statement along the line; finite quadruples
/// are also re-checked after a Moebius normalization sending two of the
/// points to o and infinity.
inline ConditionReport check_ptolemaean_circle(const MetricModel& model, std::size_t samples,
                                               std::uint64_t seed) {
    auto rep = detail::make_report("Circ", samples, seed);
    RngStream rng(seed, 0x436972);
    const Field f = model.field;
    const std::size_t m = model.dim;
    const double tol = model.kind == MetricKind::CCH1 ? 1e-6 : 1e-9;
    auto line_point = [&](double t) {
        KVector z(f, m);
        z[0] = KNum::real(f, t);
        return HPoint(std::move(z), KNum(f));
    };
    double worst = 0.0, worst_additivity = 0.0;
    std::optional<ConditionWitness> witness;
    std::size_t n_inf = samples / 4;
    for (std::size_t i = 0; i < samples; ++i) {
        double scale = i % 2 == 0 ? 1.0 : 10.0;
        std::array<double, 4> t;
        for (auto& x : t) x = rng.uniform(-scale, scale);
        std::sort(t.begin(), t.end());
        if (t[1] - t[0] < 1e-6 || t[2] - t[1] < 1e-6 || t[3] - t[2] < 1e-6) continue;
        std::array<HPoint, 4> p = {line_point(t[0]), line_point(t[1]), line_point(t[2]),
                                   line_point(t[3])};
        double res;
        if (i < n_inf) {
            // remote-point quadruple (t0, t1, t2, inf): equality reduces to
            // additivity along the line
            double lhs = metric_eval_finite(model, p[0], p[2]);
            double rhs = metric_eval_finite(model, p[0], p[1]) +
                         metric_eval_finite(model, p[1], p[2]);
            res = std::abs(lhs - rhs) / std::max(lhs, rhs);
            worst_additivity = std::max(worst_additivity, res);
        } else {
            // separated pairing {t0,t2} | {t1,t3}
            double lhs = metric_eval_finite(model, p[0], p[2]) * metric_eval_finite(model, p[1], p[3]);
            double rhs = metric_eval_finite(model, p[0], p[1]) * metric_eval_finite(model, p[2], p[3]) +
                         metric_eval_finite(model, p[0], p[3]) * metric_eval_finite(model, p[2], p[1]);
            res = std::abs(lhs - rhs) / std::max(lhs, rhs);
        }
        if (res > worst) {
            worst = res;
            if (res > tol)
                witness = ConditionWitness{{BoundaryPoint(p[0]), BoundaryPoint(p[1]),
                                            BoundaryPoint(p[2]), BoundaryPoint(p[3])},
                                           res, "equality fails on the candidate circle"};
        }
    }
    // Moebius-normalized spot checks for gauge powers: send (p1, p3) of a
    // separated quadruple to (o, inf) and test the additivity form there.
    if (model.kind == MetricKind::KoranyiPower) {
        for (int i = 0; i < 32; ++i) {
            std::array<double, 4> t;
            for (auto& x : t) x = rng.uniform(-5.0, 5.0);
            std::sort(t.begin(), t.end());
            if (t[1] - t[0] < 1e-3 || t[2] - t[1] < 1e-3 || t[3] - t[2] < 1e-3) continue;
            MoebiusMap w = normalizing_word(BoundaryPoint(line_point(t[1])),
                                            BoundaryPoint(line_point(t[3])), f, m);
            BoundaryPoint a = apply_map(w, BoundaryPoint(line_point(t[0])));
            BoundaryPoint c = apply_map(w, BoundaryPoint(line_point(t[2])));
            double lhs = metric_eval(model, a, c);
            double rhs = metric_eval(model, a, BoundaryPoint(h_origin(f, m))) +
                         metric_eval(model, BoundaryPoint(h_origin(f, m)), c);
            double res = std::abs(lhs - rhs) / std::max(lhs, rhs);
            worst_additivity = std::max(worst_additivity, res);
            if (res > worst) worst = res;
        }
    }
    rep.constants["max_equality_residual"] = worst;
    rep.constants["additivity_residual"] = worst_additivity;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    if (rep.verdict == Verdict::Fail && witness) rep.witness = witness;
    return rep;
}

// ---- inversion distance chain ---------------------------------------------------

struct ChainReport {
    double max_link_residual = 0.0;
    double max_conclusion_residual = 0.0;
    std::optional<HPoint> worst;

    double max_residual() const { return std::max(max_link_residual, max_conclusion_residual); }
};

/// Verifies every displayed equality in the chain computing d(I(p), o) for
/// d = beta d_gauge^alpha, each intermediate expression evaluated
/// independently, plus the closing identities
/// d(I(p),o) = d^2(o,1)/d(o,p) and d^2(o,p) = d^2(o,1) |A(p)|^alpha.
inline ChainReport verify_theorem12_chain(const MetricModel& model, std::size_t samples,
                                          std::uint64_t seed) {
    if (model.kind != MetricKind::KoranyiPower)
        throw MathDomainError("the chain is stated for gauge-power metrics");
    RngStream rng(seed, 0x636861);
    const Field f = model.field;
    const std::size_t m = model.dim;
    HPoint o = h_origin(f, m);
    const double alpha = model.alpha;
    ChainReport rep;
    auto d = [&](const HPoint& a, const HPoint& b) { return metric_eval_finite(model, a, b); };
    double beta = d(h_unit_horizontal(f, m), o);
    for (std::size_t i = 0; i < samples; ++i) {
        HPoint p = sample_point_away_from_origin(f, m, rng);
        KNum a = gauge_numerator(p);
        double mod = norm(a);
        double scale = std::pow(mod, -alpha);

        KNum ac = k_conj(a);
        KVector z1(f, m), z2(f, m), z3(f, m);
        for (std::size_t j = 0; j < m; ++j) {
            z1[j] = k_mul(p.zeta[j], ac) / (mod * mod);
            z2[j] = k_mul(p.zeta[j], ac) / mod;
            z3[j] = k_mul(a / mod, k_conj(p.zeta[j]));
        }
        std::array<double, 9> v;
        v[0] = d(invert_finite(p), o);
        v[1] = d(HPoint(z1, k_conj(p.v) / (mod * mod)), o);
        v[2] = d(h_dilate(HPoint(z2, k_conj(p.v)), 1.0 / mod), o);
        v[3] = scale * d(HPoint(z3, p.v), o);
        v[4] = scale * d(HPoint(-h_conjugate(p).zeta, p.v), o);
        v[5] = scale * d(HPoint(-p.zeta, -p.v), o);
        v[6] = scale * d(h_inv(p), o);
        v[7] = scale * d(h_mul(p, h_inv(p)), h_mul(p, o));
        v[8] = scale * d(o, p);
        double link_worst = 0.0;
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
            link_worst = std::max(link_worst, rel_err(v[k], v[k + 1]));
        double c1 = rel_err(v[0], beta * beta / d(o, p));
        double c2 = rel_err(d(o, p) * d(o, p), beta * beta * std::pow(mod, alpha));
        if (std::max(link_worst, std::max(c1, c2)) > rep.max_residual()) rep.worst = p;
        rep.max_link_residual = std::max(rep.max_link_residual, link_worst);
        rep.max_conclusion_residual = std::max(rep.max_conclusion_residual, std::max(c1, c2));
    }
    return rep;
}

// ---- classification -------------------------------------------------------------

struct ClassificationMatrix {
    std::vector<std::string> rows;
    std::vector<std::string> columns;
    std::vector<std::vector<ConditionReport>> cells;
    std::vector<std::string> violations;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
};

inline const std::vector<std::string>& condition_columns() {
    static const std::vector<std::string> cols = {"Sim",  "TopHeuristic", "Inv", "AlphaHoelder",
                                                  "G",    "PL",           "Eq",  "BiLip",
                                                  "AlphaMet", "Ptol",     "Circ"};
    return cols;
}

namespace detail {

/// One matrix row. Every cell derives its stream from (seed, row, column),
/// so rows can be evaluated in any order or in parallel with identical output.
inline std::vector<ConditionReport> classification_row(const MetricModel& model, std::size_t r,
                                                       std::size_t samples, std::uint64_t seed) {
    auto cell_seed = [&](std::size_t c) {
        return splitmix64(seed ^ splitmix64(r * 97 + c));
    };
    double alpha = 1.0;
    bool alpha_known = false;
    try {
        alpha = std::clamp(estimate_alpha_beta(model, samples, cell_seed(100)).alpha, 1e-3, 1.0);
        alpha_known = true;
    } catch (const Error&) {
    }

    std::vector<ConditionReport> row;
    auto guarded = [&](auto&& fn, const char* name) {
        try {
            row.push_back(fn());
        } catch (const Error& e) {
            auto rep = make_report(name, samples, cell_seed(row.size()));
            rep.verdict = Verdict::Inconclusive;
            rep.note = e.what();
            row.push_back(std::move(rep));
        }
    };
    guarded([&] { return check_sim_invariance(model, samples, cell_seed(0)); }, "Sim");
    guarded([&] { return check_top_heuristic(model, samples, cell_seed(1)); }, "TopHeuristic");
    guarded([&] { return check_inv(model, samples, cell_seed(2)); }, "Inv");
    guarded([&] { return check_alpha_holder(model, alpha, samples, cell_seed(3)); },
            "AlphaHoelder");
    guarded([&] { return check_G(model, alpha, samples, cell_seed(4)); }, "G");
    guarded([&] { return check_PL(model, alpha, samples, cell_seed(5)); }, "PL");
    guarded([&] { return check_eq(model); }, "Eq");
    guarded([&] { return check_biLip(model, alpha, samples, cell_seed(7)); }, "BiLip");
    guarded([&] { return fit_alpha_met(model, samples, cell_seed(8)); }, "AlphaMet");
    guarded([&] { return check_ptolemaean(model, samples, cell_seed(9)); }, "Ptol");
    guarded([&] { return check_ptolemaean_circle(model, samples, cell_seed(10)); }, "Circ");
    if (!alpha_known) {
        for (auto& rep : row)
            if (rep.condition == "AlphaHoelder" || rep.condition == "G" ||
                rep.condition == "PL" || rep.condition == "BiLip")
                rep.note += (rep.note.empty() ? "" : "; ") + std::string("alpha defaulted to 1");
    }
    return row;
}

} // namespace detail

/// Runs every checker on every model, then audits the theorem implications.
/// An implication violation indicates a checker bug, never new mathematics,
/// so violations are surfaced as hard errors in the matrix.
inline ClassificationMatrix run_classification(const std::vector<MetricModel>& models,
                                               std::size_t samples, std::uint64_t seed) {
    ClassificationMatrix mat;
    mat.columns = condition_columns();
    mat.seed = seed;
    mat.samples = samples;
    std::vector<std::future<std::vector<ConditionReport>>> rows;
    for (std::size_t r = 0; r < models.size(); ++r) {
        mat.rows.push_back(models[r].label());
        rows.push_back(std::async(std::launch::async, [&, r] {
            return detail::classification_row(models[r], r, samples, seed);
        }));
    }
    for (auto& f : rows) mat.cells.push_back(f.get());

    auto verdict_of = [&](std::size_t r, const std::string& cond) {
        for (const auto& rep : mat.cells[r])
            if (rep.condition == cond) return rep.verdict;
        return Verdict::Inconclusive;
    };
    auto passes = [&](std::size_t r, std::initializer_list<const char*> conds) {
        for (const char* c : conds)
            if (verdict_of(r, c) != Verdict::Pass) return false;
        return true;
    };
    for (std::size_t r = 0; r < models.size(); ++r) {
        const std::string& label = mat.rows[r];
        auto demand = [&](bool hypothesis, const char* conclusion, const std::string& rule) {
            if (hypothesis && verdict_of(r, conclusion) == Verdict::Fail)
                mat.violations.push_back(label + ": " + rule + " violated (" + conclusion +
                                         " fails)");
        };
        bool sim_top = passes(r, {"Sim", "TopHeuristic"});
        if (models[r].field == Field::R)
            demand(sim_top, "AlphaMet", "Sim & Top => AlphaMet over R");
        demand(sim_top && passes(r, {"Inv"}), "AlphaMet", "Sim & Top & Inv => AlphaMet");
        demand(sim_top && passes(r, {"G"}), "BiLip", "Sim & Top & G => BiLip");
        demand(sim_top && passes(r, {"G", "Eq"}), "AlphaMet", "Sim & Top & G & Eq => AlphaMet");
        demand(passes(r, {"AlphaMet"}), "Ptol", "AlphaMet => Ptol");
        if (passes(r, {"AlphaMet", "Circ"})) {
            double a = 1.0;
            for (const auto& rep : mat.cells[r])
                if (rep.condition == "AlphaMet" && rep.constants.count("alpha"))
                    a = rep.constants.at("alpha");
            if (std::abs(a - 1.0) > 1e-6)
                mat.violations.push_back(label +
                                         ": AlphaMet & Circ force alpha = 1, fitted alpha = " +
                                         std::to_string(a));
        }
        if (models[r].declared_left_invariant) {
            Verdict g = verdict_of(r, "G"), pl = verdict_of(r, "PL");
            if (g != Verdict::Inconclusive && pl != Verdict::Inconclusive && g != pl)
                mat.violations.push_back(label + ": G and PL verdicts disagree");
        }
    }
    return mat;
}

/// The stock model zoo for a field: gauge powers, plus the CC metric on the
/// first complex Heisenberg group and the Euclidean metric over R.
inline std::vector<MetricModel> default_zoo(Field f, std::size_t m) {
    std::vector<MetricModel> zoo;
    zoo.push_back(MetricModel::koranyi_power(f, m, 1.0, 1.0));
    zoo.push_back(MetricModel::koranyi_power(f, m, 0.5, 1.0));
    zoo.push_back(MetricModel::koranyi_power(f, m, 1.0, 2.0));
    if (f == Field::C && m == 1) zoo.push_back(MetricModel::cc_h1());
    if (f == Field::R) zoo.push_back(MetricModel::euclidean_r(m));
    return zoo;
}

} // namespace heismoeb
