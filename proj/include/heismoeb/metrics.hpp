#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "heismoeb/heisenberg.hpp"
#include "heismoeb/rng.hpp"

namespace heismoeb {

enum class MetricKind { KoranyiPower, EuclideanR, CCH1, CustomGauge };

/// Reference-gauge normalization for Carnot-Caratheodory comparisons.
enum class CcGaugeNorm { Default, Scaled16 };

/// An evaluatable extended metric on the boundary.
///
/// KoranyiPower(alpha, beta) is beta * d_H^alpha. EuclideanR is ||z - z'||
/// over K = R. CCH1 is the sub-Riemannian distance on the first complex
/// Heisenberg group. CustomGauge wraps a user distance, either a one-point
/// gauge lifted through the group difference (left-invariant by construction)
/// or a raw two-point function.
struct MetricModel {
    MetricKind kind = MetricKind::KoranyiPower;
    Field field = Field::C;
    std::size_t dim = 1; // n-1
    double alpha = 1.0;
    double beta = 1.0;
    CcGaugeNorm gauge_norm = CcGaugeNorm::Default;
    std::function<double(const HPoint&)> custom_gauge;
    std::function<double(const HPoint&, const HPoint&)> custom_dist;
    bool declared_left_invariant = true;
    std::string name;

    static MetricModel koranyi_power(Field f, std::size_t m, double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw MathDomainError("koranyi power needs alpha > 0 and beta > 0");
        MetricModel mm;
        mm.kind = MetricKind::KoranyiPower;
        mm.field = f;
        mm.dim = m;
        mm.alpha = alpha;
        mm.beta = beta;
        char buf[64];
        std::snprintf(buf, sizeof buf, "koranyi_power(%g,%g)", alpha, beta);
        mm.name = buf;
        return mm;
    }

    static MetricModel euclidean_r(std::size_t m) {
        MetricModel mm;
        mm.kind = MetricKind::EuclideanR;
        mm.field = Field::R;
        mm.dim = m;
        mm.name = "euclidean_r";
        return mm;
    }

    static MetricModel cc_h1(CcGaugeNorm norm = CcGaugeNorm::Default) {
        MetricModel mm;
        mm.kind = MetricKind::CCH1;
        mm.field = Field::C;
        mm.dim = 1;
        mm.gauge_norm = norm;
        mm.name = norm == CcGaugeNorm::Default ? "cc_h1" : "cc_h1(scaled16)";
        return mm;
    }

    static MetricModel custom_from_gauge(Field f, std::size_t m,
                                         std::function<double(const HPoint&)> gauge,
                                         std::string label = "custom_gauge") {
        MetricModel mm;
        mm.kind = MetricKind::CustomGauge;
        mm.field = f;
        mm.dim = m;
        mm.custom_gauge = std::move(gauge);
        mm.declared_left_invariant = true;
        mm.name = std::move(label);
        return mm;
    }

    static MetricModel custom_from_dist(Field f, std::size_t m,
                                        std::function<double(const HPoint&, const HPoint&)> dist,
                                        bool left_invariant,
                                        std::string label = "custom_dist") {
        MetricModel mm;
        mm.kind = MetricKind::CustomGauge;
        mm.field = f;
        mm.dim = m;
        mm.custom_dist = std::move(dist);
        mm.declared_left_invariant = left_invariant;
        mm.name = std::move(label);
        return mm;
    }

    std::string label() const { return name.empty() ? "metric" : name; }
};

namespace detail {

// Arc equation for unit-speed geodesics from the origin of H^1: an arc of
// central angle theta over a chord of length R sweeps vertical increment
// 4 * area = R^2 (theta - sin theta) / (2 sin^2(theta/2)) and has length
// R theta / (2 sin(theta/2)). theta -> 2pi is the vertical axis limit.
inline double cc_vertical_ratio(double theta) {
    double s = std::sin(0.5 * theta);
    return (theta - std::sin(theta)) / (2.0 * s * s);
}

inline double cc_length_ratio(double theta) {
    return theta / (2.0 * std::sin(0.5 * theta));
}

} // namespace detail

/// Carnot-Caratheodory distance from the origin on the first complex
/// Heisenberg group, for the horizontal frame dual to the group law
/// (normalized so that d_cc(o, (z, 0)) = ||z||). Solved by bisection on the
/// geodesic twist angle.
inline double cc_from_origin(const HPoint& p) {
    if (p.field() != Field::C || p.dim() != 1)
        throw MathDomainError("cc distance implemented for field C, n = 2 only");
    const double r = norm(p.zeta[0]);
    const double tau = std::abs(p.v.c[1]);
    if (tau == 0.0) return r;
    if (r == 0.0) return std::sqrt(M_PI * tau); // full-circle limit of the arc family
    const double u = tau / (r * r);
    if (u > 1e8) {
        // near-vertical asymptotics: theta = 2pi - 2*eps, eps = sqrt(pi/u) + O(eps^4)
        double eps = std::sqrt(M_PI / u);
        return r * (M_PI - eps) / std::sin(eps);
    }
    double lo = 1e-12, hi = 2.0 * M_PI - 1e-12;
    if (detail::cc_vertical_ratio(hi) < u)
        throw SolverError("cc geodesic twist parameter out of bracket");
    int iters = 0;
    while (hi - lo > 1e-13 * (1.0 + hi)) {
        if (++iters > 200) throw SolverError("cc geodesic bisection failed to converge");
        double mid = 0.5 * (lo + hi);
        (detail::cc_vertical_ratio(mid) < u ? lo : hi) = mid;
    }
    return r * detail::cc_length_ratio(0.5 * (lo + hi));
}

/// Reference gauge used in CC comparisons. Scaled16 weights the vertical part
/// so the classical estimate pi^(-1/2) d <= d_cc <= d holds.
inline double cc_reference_gauge(const HPoint& p, CcGaugeNorm norm) {
    double n2 = vec_norm_sq(p.zeta);
    double w = norm == CcGaugeNorm::Scaled16 ? 16.0 : 1.0;
    return std::pow(n2 * n2 + w * norm_sq(p.v), 0.25);
}

inline double metric_eval_finite(const MetricModel& m, const HPoint& p, const HPoint& q) {
    switch (m.kind) {
        case MetricKind::KoranyiPower:
            return m.beta * std::pow(koranyi_dist(p, q), m.alpha);
        case MetricKind::EuclideanR: {
            if (p.field() != Field::R) throw FieldMismatchError("euclidean_r expects field R");
            double s = 0.0;
            for (std::size_t i = 0; i < p.dim(); ++i) {
                double d = p.zeta[i].c[0] - q.zeta[i].c[0];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case MetricKind::CCH1:
            return cc_from_origin(h_mul(h_inv(q), p));
        case MetricKind::CustomGauge:
            if (m.custom_dist) return m.custom_dist(p, q);
            return m.custom_gauge(h_mul(h_inv(q), p));
    }
    throw Error("unreachable metric kind");
}

/// Evaluates the model with the remote-point conventions.
inline ExtendedDistance metric_eval(const MetricModel& m, const BoundaryPoint& p,
                                    const BoundaryPoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity() || q.is_infinity()) return kPlusInfinity;
    if (p.point().field() != m.field || p.point().dim() != m.dim)
        throw ShapeMismatchError("point shape does not match metric model");
    return metric_eval_finite(m, p.point(), q.point());
}

struct FitResult {
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;
};

struct NotDilationCompatible : Error {
    using Error::Error;
};

/// Measures the similarity factor of one dilation D_delta by sampling pairs.
/// Throws NotDilationCompatible if the per-pair ratios disagree.
inline double dilation_factor(const MetricModel& m, double delta, std::size_t pairs,
                              RngStream& rng, double spread_tol = 1e-6) {
    double lo = kPlusInfinity, hi = 0.0;
    std::size_t accepted = 0;
    while (accepted < pairs) {
        HPoint p = random_hpoint(m.field, m.dim, rng);
        HPoint q = random_hpoint(m.field, m.dim, rng);
        double base = metric_eval_finite(m, p, q);
        if (base < 1e-9) continue;
        double r = metric_eval_finite(m, h_dilate(p, delta), h_dilate(q, delta)) / base;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++accepted;
    }
    if ((hi - lo) / hi > spread_tol)
        throw NotDilationCompatible(m.label() + ": D_" + std::to_string(delta) +
                                    " ratio spread " + std::to_string((hi - lo) / hi));
    return 0.5 * (lo + hi);
}

/// Fits K(D_delta) = delta^alpha by least squares over delta = 2^k, k = -8..8,
/// and reads beta = d(o, (e_1, 0)). Also probes the subadditivity
/// (d1+d2)^alpha <= d1^alpha + d2^alpha that pins alpha <= 1.
inline FitResult estimate_alpha_beta(const MetricModel& m, std::size_t samples,
                                     std::uint64_t seed) {
    RngStream rng(seed, 0x616c7068);
    std::size_t pairs = std::max<std::size_t>(8, samples / 32);
    double sxx = 0.0, sxy = 0.0;
    std::vector<std::pair<double, double>> measured;
    for (int k = -8; k <= 8; ++k) {
        if (k == 0) continue;
        double delta = std::ldexp(1.0, k);
        double f = dilation_factor(m, delta, pairs, rng);
        double x = std::log(delta), y = std::log(f);
        sxx += x * x;
        sxy += x * y;
        measured.emplace_back(delta, f);
    }
    FitResult fit;
    fit.alpha = sxy / sxx;
    fit.beta = metric_eval_finite(m, h_unit_horizontal(m.field, m.dim), h_origin(m.field, m.dim));
    for (auto [delta, f] : measured)
        fit.residual = std::max(fit.residual, rel_err(f, std::pow(delta, fit.alpha)));
    for (int i = 0; i < 64; ++i) {
        double d1 = std::exp(rng.uniform(-3.0, 3.0));
        double d2 = std::exp(rng.uniform(-3.0, 3.0));
        double gap = std::pow(d1, fit.alpha) + std::pow(d2, fit.alpha) - std::pow(d1 + d2, fit.alpha);
        if (gap < -1e-9 * std::pow(d1 + d2, fit.alpha))
            throw NotDilationCompatible(m.label() + ": fitted exponent fails subadditivity");
    }
    return fit;
}

} // namespace heismoeb
