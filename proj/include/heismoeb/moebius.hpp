#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "heismoeb/metrics.hpp"

namespace heismoeb {

/// Square K-matrix, row-major. Fields R, C, H only.
struct UnitaryMatrix {
    Field field = Field::R;
    std::size_t n = 0;
    std::vector<KNum> a;

    UnitaryMatrix() = default;
    UnitaryMatrix(Field f, std::size_t size) : field(f), n(size), a(size * size, KNum(f)) {
        if (f == Field::O) throw MathDomainError("no matrix rotations over O");
    }

    const KNum& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    KNum& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

/// Max deviation of U*U from the identity (conjugate-transpose on the left).
inline double unitarity_defect(const UnitaryMatrix& u) {
    double worst = 0.0;
    for (std::size_t j = 0; j < u.n; ++j)
        for (std::size_t k = 0; k < u.n; ++k) {
            KNum s(u.field);
            for (std::size_t i = 0; i < u.n; ++i)
                s = s + k_mul(k_conj(u.at(i, j)), u.at(i, k));
            KNum expect = j == k ? KNum::one(u.field) : KNum::zero(u.field);
            worst = std::max(worst, norm(s - expect));
        }
    return worst;
}

inline KVector mat_vec(const UnitaryMatrix& u, const KVector& z) {
    if (u.field != z.field) throw FieldMismatchError("matrix/vector field mismatch");
    if (u.n != z.size()) throw ShapeMismatchError("matrix/vector size mismatch");
    KVector out(z.field, z.size());
    for (std::size_t i = 0; i < u.n; ++i) {
        KNum s(z.field);
        for (std::size_t j = 0; j < u.n; ++j) s = s + k_mul(u.at(i, j), z[j]);
        out[i] = s;
    }
    return out;
}

/// Haar-ish random element of the rotation group via Gram-Schmidt over K
/// (coefficients on the right, pairing conjugate-on-first). Not defined for O.
inline UnitaryMatrix random_rotation(Field f, std::size_t n, RngStream& rng) {
    if (f == Field::O)
        throw MathDomainError("octonionic rotations are the S_mu generators, not matrices");
    UnitaryMatrix u(f, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<KNum> col(n);
        double len = 0.0;
        do {
            for (std::size_t i = 0; i < n; ++i) col[i] = random_knum(f, rng);
            for (std::size_t k = 0; k < j; ++k) {
                KNum coef(f);
                for (std::size_t i = 0; i < n; ++i)
                    coef = coef + k_mul(k_conj(u.at(i, k)), col[i]);
                for (std::size_t i = 0; i < n; ++i)
                    col[i] = col[i] - k_mul(u.at(i, k), coef);
            }
            double s = 0.0;
            for (const auto& x : col) s += norm_sq(x);
            len = std::sqrt(s);
        } while (len < 1e-6);
        for (std::size_t i = 0; i < n; ++i) u.at(i, j) = col[i] / len;
    }
    return u;
}

inline UnitaryMatrix random_rotation(Field f, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed, 0x726f74);
    return random_rotation(f, n, rng);
}

// --- generators -----------------------------------------------------------

struct Translate {
    HPoint offset;
};
struct Rotate {
    UnitaryMatrix u;
};
struct RotateQuat {
    KNum mu; // unit quaternion
};
struct RotateOct {
    KNum mu; // unit imaginary octonion
};
struct Dilate {
    double delta;
};
struct Conjugate {};
struct Invert {};

using Generator = std::variant<Translate, Rotate, RotateQuat, RotateOct, Dilate, Conjugate, Invert>;

/// Finite composition word over the generator set. The rightmost (last)
/// generator applies first, as in function composition.
struct MoebiusMap {
    Field field = Field::C;
    std::size_t dim = 1; // n-1
    std::vector<Generator> word;

    MoebiusMap(Field f, std::size_t m) : field(f), dim(m) {}

    MoebiusMap& push(Generator g) {
        validate(g);
        word.push_back(std::move(g));
        return *this;
    }

    void validate(const Generator& g) const {
        if (const auto* t = std::get_if<Translate>(&g)) {
            if (t->offset.field() != field || t->offset.dim() != dim)
                throw ShapeMismatchError("translation offset shape mismatch");
        } else if (const auto* r = std::get_if<Rotate>(&g)) {
            if (r->u.field != field || r->u.n != dim)
                throw ShapeMismatchError("rotation matrix shape mismatch");
            if (unitarity_defect(r->u) > 1e-10)
                throw MathDomainError("rotation matrix is not unitary");
        } else if (const auto* rq = std::get_if<RotateQuat>(&g)) {
            if (field != Field::H) throw FieldMismatchError("Sp(1) rotation needs field H");
            if (std::abs(norm(rq->mu) - 1.0) > 1e-10)
                throw MathDomainError("Sp(1) rotation needs a unit quaternion");
        } else if (const auto* ro = std::get_if<RotateOct>(&g)) {
            if (field != Field::O) throw FieldMismatchError("octonionic rotation needs field O");
            if (std::abs(norm(ro->mu) - 1.0) > 1e-10 || std::abs(ro->mu.re()) > 1e-10)
                throw MathDomainError("octonionic rotation needs a unit imaginary octonion");
        } else if (const auto* d = std::get_if<Dilate>(&g)) {
            if (!(d->delta > 0.0)) throw MathDomainError("dilation factor must be positive");
        }
    }
};

/// Word concatenation; the right factor applies first.
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    if (m1.field != m2.field || m1.dim != m2.dim)
        throw FieldMismatchError("composing maps over different boundaries");
    MoebiusMap out(m1.field, m1.dim);
    out.word = m1.word;
    out.word.insert(out.word.end(), m2.word.begin(), m2.word.end());
    return out;
}

/// Boundary inversion on finite points other than the origin.
inline HPoint invert_finite(const HPoint& p) {
    KNum a = gauge_numerator(p); // -||z||^2 + v
    double n2 = norm_sq(a);
    if (n2 == 0.0) throw MathDomainError("inversion of the origin is the remote point");
    KNum ai = k_inv(a);
    KVector z(p.field(), p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) z[i] = k_mul(p.zeta[i], ai);
    return HPoint(std::move(z), k_conj(p.v) / n2);
}

inline BoundaryPoint apply_generator(const Generator& g, const BoundaryPoint& p, Field f,
                                     std::size_t m) {
    if (std::holds_alternative<Invert>(g)) {
        if (p.is_infinity()) return BoundaryPoint(h_origin(f, m));
        if (koranyi_gauge(p.point()) == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint(invert_finite(p.point()));
    }
    if (p.is_infinity()) return p; // all other generators fix the remote point
    const HPoint& x = p.point();
    if (const auto* t = std::get_if<Translate>(&g)) return BoundaryPoint(h_mul(t->offset, x));
    if (const auto* r = std::get_if<Rotate>(&g))
        return BoundaryPoint(HPoint(mat_vec(r->u, x.zeta), x.v));
    if (const auto* rq = std::get_if<RotateQuat>(&g)) {
        KNum mui = k_inv(rq->mu);
        KVector z(f, m);
        for (std::size_t i = 0; i < m; ++i) z[i] = k_mul(k_mul(rq->mu, x.zeta[i]), mui);
        return BoundaryPoint(HPoint(std::move(z), k_mul(k_mul(rq->mu, x.v), mui)));
    }
    if (const auto* ro = std::get_if<RotateOct>(&g)) {
        KNum muc = k_conj(ro->mu);
        KVector z(f, m);
        for (std::size_t i = 0; i < m; ++i) z[i] = k_mul(x.zeta[i], muc);
        return BoundaryPoint(HPoint(std::move(z), k_mul(k_mul(ro->mu, x.v), muc)));
    }
    if (const auto* d = std::get_if<Dilate>(&g)) return BoundaryPoint(h_dilate(x, d->delta));
    return BoundaryPoint(h_conjugate(x)); // Conjugate
}

inline BoundaryPoint apply_map(const MoebiusMap& map, BoundaryPoint p) {
    if (!p.is_infinity() &&
        (p.point().field() != map.field || p.point().dim() != map.dim))
        throw ShapeMismatchError("point shape does not match map");
    for (auto it = map.word.rbegin(); it != map.word.rend(); ++it)
        p = apply_generator(*it, p, map.field, map.dim);
    return p;
}

/// Product of the word's dilation factors: the similarity factor the word
/// realizes on the gauge metric whenever it fixes the remote point.
inline double nominal_similarity_factor(const MoebiusMap& map) {
    double f = 1.0;
    for (const auto& g : map.word)
        if (const auto* d = std::get_if<Dilate>(&g)) f *= d->delta;
    return f;
}

/// Word w with w(a) = o and w(b) = infinity, for distinct boundary points.
inline MoebiusMap normalizing_word(const BoundaryPoint& a, const BoundaryPoint& b, Field f,
                                   std::size_t m) {
    if (approx_eq(a, b, 0.0)) throw MathDomainError("normalizing word needs distinct points");
    MoebiusMap w(f, m);
    if (b.is_infinity()) {
        w.push(Translate{h_inv(a.point())});
        return w;
    }
    MoebiusMap head(f, m);
    head.push(Invert{}).push(Translate{h_inv(b.point())});
    BoundaryPoint a2 = apply_map(head, a);
    if (a2.is_infinity())
        throw MathDomainError("degenerate configuration in normalizing word");
    if (koranyi_gauge(a2.point()) > 0.0) {
        w.push(Translate{h_inv(a2.point())});
    }
    return compose(w, head);
}

// --- cross-ratios ----------------------------------------------------------

struct CrossRatioPair {
    double x1 = 0.0;
    double x2 = 0.0;
};

namespace detail {

/// d(p4,p2) d(p3,p1) / (d(p4,p1) d(p3,p2)) with ratios of two infinite
/// distances evaluated as 1.
inline double cross_ratio_value(const MetricModel& metric, const BoundaryPoint& p1,
                                const BoundaryPoint& p2, const BoundaryPoint& p3,
                                const BoundaryPoint& p4) {
    std::array<double, 2> num = {metric_eval(metric, p4, p2), metric_eval(metric, p3, p1)};
    std::array<double, 2> den = {metric_eval(metric, p4, p1), metric_eval(metric, p3, p2)};
    double value = 1.0;
    int inf_balance = 0;
    for (double x : num) {
        if (std::isinf(x)) ++inf_balance;
        else value *= x;
    }
    for (double x : den) {
        if (std::isinf(x)) --inf_balance;
        else value /= x;
    }
    if (inf_balance != 0)
        throw MathDomainError("cross-ratio does not extend to this configuration");
    return value;
}

} // namespace detail

/// The two independent absolute cross-ratios of a quadruple of pairwise
/// distinct boundary points (at most one of them the remote point).
inline CrossRatioPair cross_ratio_pair(const MetricModel& metric,
                                       const std::array<BoundaryPoint, 4>& p) {
    int infinities = 0;
    for (const auto& x : p) infinities += x.is_infinity() ? 1 : 0;
    if (infinities > 1) throw MathDomainError("at most one quadruple point may be remote");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (metric_eval(metric, p[i], p[j]) == 0.0)
                throw MathDomainError("cross-ratio needs pairwise distinct points");
    CrossRatioPair out;
    out.x1 = detail::cross_ratio_value(metric, p[0], p[1], p[2], p[3]);
    out.x2 = detail::cross_ratio_value(metric, p[0], p[2], p[1], p[3]);
    return out;
}

/// Values of the cross-ratio on the six permutation classes that fix p1:
/// (x1, x2, 1/x2, x1/x2, 1/x1, x2/x1).
inline std::array<double, 6> six_values(const CrossRatioPair& cr) {
    if (!(cr.x1 > 0.0) || !(cr.x2 > 0.0) || std::isinf(cr.x1) || std::isinf(cr.x2))
        throw MathDomainError("six-value table needs finite positive cross-ratios");
    return {cr.x1, cr.x2, 1.0 / cr.x2, cr.x1 / cr.x2, 1.0 / cr.x1, cr.x2 / cr.x1};
}

// --- similarity measurement -------------------------------------------------

struct SimilarityResult {
    bool is_similarity = false;
    double factor = 0.0;
    double spread = 0.0; // relative ratio spread over the sample
    std::optional<std::pair<HPoint, HPoint>> witness;
    std::string reason;
};

/// Measures d(m p, m q)/d(p, q) over sample pairs. A map that moves the
/// remote point is rejected outright.
inline SimilarityResult similarity_factor(const MetricModel& metric, const MoebiusMap& map,
                                          std::size_t samples, std::uint64_t seed,
                                          double spread_tol = 1e-8) {
    SimilarityResult res;
    if (!apply_map(map, BoundaryPoint::infinity()).is_infinity()) {
        res.reason = "map does not fix the remote point";
        return res;
    }
    RngStream rng(seed, 0x73696d);
    double lo = kPlusInfinity, hi = 0.0;
    std::pair<HPoint, HPoint> lo_pair, hi_pair;
    std::size_t accepted = 0;
    while (accepted < samples) {
        HPoint p = sample_point(metric.field, metric.dim, rng);
        HPoint q = sample_point(metric.field, metric.dim, rng);
        double base = metric_eval_finite(metric, p, q);
        if (base < 1e-9) continue;
        BoundaryPoint mp = apply_map(map, BoundaryPoint(p));
        BoundaryPoint mq = apply_map(map, BoundaryPoint(q));
        double r = metric_eval(metric, mp, mq) / base;
        if (r < lo) { lo = r; lo_pair = {p, q}; }
        if (r > hi) { hi = r; hi_pair = {p, q}; }
        ++accepted;
    }
    res.spread = (hi - lo) / hi;
    if (res.spread < spread_tol) {
        res.is_similarity = true;
        res.factor = 0.5 * (lo + hi);
    } else {
        res.witness = hi_pair;
        res.reason = "ratio spread " + std::to_string(res.spread);
    }
    return res;
}

// --- inversion identities ----------------------------------------------------

struct InversionIdentitiesReport {
    double beta_sq = 0.0;            // d(o,p0) d(o,I p0) from the base point
    double residual_product = 0.0;   // d(o,p) d(o,I p) vs beta^2
    double residual_two_point = 0.0; // d(Ip,Iq) vs beta^2 d(p,q)/(d(o,p) d(o,q))
    double residual_sphere = 0.0;    // |d(I s, o) - beta| / beta on sphere points
    std::optional<HPoint> worst;

    double max_residual() const {
        return std::max({residual_product, residual_two_point, residual_sphere});
    }
};

namespace detail {

/// Solves d(o, D_t q) = target by bisection on log t.
inline std::optional<HPoint> point_on_sphere(const MetricModel& metric, const HPoint& q,
                                             double target) {
    HPoint o = h_origin(metric.field, metric.dim);
    double lo = -40.0, hi = 40.0;
    auto value = [&](double logt) {
        return metric_eval_finite(metric, h_dilate(q, std::exp(logt)), o);
    };
    if (value(lo) > target || value(hi) < target) return std::nullopt;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (value(mid) < target ? lo : hi) = mid;
    }
    return h_dilate(q, std::exp(0.5 * (lo + hi)));
}

} // namespace detail

/// Checks the two inversion identities forced on any metric whose Moebius
/// group contains the o <-> infinity inversion, plus setwise invariance of
/// the metric sphere of radius beta.
inline InversionIdentitiesReport verify_inversion_identities(const MetricModel& metric,
                                                             std::size_t samples,
                                                             std::uint64_t seed) {
    RngStream rng(seed, 0x696e76);
    HPoint o = h_origin(metric.field, metric.dim);
    InversionIdentitiesReport rep;

    HPoint p0 = sample_point_away_from_origin(metric.field, metric.dim, rng);
    rep.beta_sq = metric_eval_finite(metric, p0, o) * metric_eval_finite(metric, invert_finite(p0), o);

    std::size_t accepted = 0;
    while (accepted < samples) {
        HPoint p = sample_point_away_from_origin(metric.field, metric.dim, rng);
        HPoint q = sample_point_away_from_origin(metric.field, metric.dim, rng);
        double dp = metric_eval_finite(metric, p, o);
        double dq = metric_eval_finite(metric, q, o);
        double dpq = metric_eval_finite(metric, p, q);
        if (dpq < 1e-9) continue;
        double r1 = rel_err(dp * metric_eval_finite(metric, invert_finite(p), o), rep.beta_sq);
        double r2 = rel_err(metric_eval_finite(metric, invert_finite(p), invert_finite(q)),
                            rep.beta_sq * dpq / (dp * dq));
        if (std::max(r1, r2) > std::max(rep.residual_product, rep.residual_two_point))
            rep.worst = p;
        rep.residual_product = std::max(rep.residual_product, r1);
        rep.residual_two_point = std::max(rep.residual_two_point, r2);
        ++accepted;
    }

    double beta = std::sqrt(rep.beta_sq);
    std::size_t sphere_samples = std::max<std::size_t>(8, samples / 16);
    for (std::size_t i = 0; i < sphere_samples; ++i) {
        HPoint dir = sample_point_away_from_origin(metric.field, metric.dim, rng, 0);
        auto s = detail::point_on_sphere(metric, dir, beta);
        if (!s) continue;
        double moved = metric_eval_finite(metric, invert_finite(*s), o);
        double res = std::abs(moved - beta) / beta;
        double prior_max = rep.max_residual();
        if (res > rep.residual_sphere) {
            rep.residual_sphere = res;
            if (res > prior_max) rep.worst = *s;
        }
    }
    return rep;
}

/// Residual of the inversion decomposition
/// I(p) = (D_{1/|A|} o J o R_{-A/|A|} o J)(p^{-1}), A = -||z||^2 + v,
/// with R_lambda the componentwise left multiplication of zeta by lambda.
/// Both sides agree in exact arithmetic; the return value is the relative
/// coordinate deviation between them.
inline double verify_inversion_decomposition(const HPoint& p) {
    double g = koranyi_gauge(p);
    if (g == 0.0) throw MathDomainError("decomposition is undefined at the origin");
    KNum a = gauge_numerator(p);
    double mod = norm(a);
    KNum lambda = -a / mod;

    HPoint x = h_conjugate(h_inv(p));
    KVector z(p.field(), p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) z[i] = k_mul(lambda, x.zeta[i]);
    HPoint rotated(std::move(z), x.v);
    HPoint rhs = h_dilate(h_conjugate(rotated), 1.0 / mod);

    return coord_rel_residual(invert_finite(p), rhs);
}

// --- random words ------------------------------------------------------------

/// Random generator word over the field's Moebius generator set.
/// Componentwise conjugation enters only over R and C, where it is a gauge
/// isometry; over H and O it is not a Moebius map of the gauge metric.
inline MoebiusMap random_word(Field f, std::size_t m, std::size_t length, RngStream& rng,
                              bool allow_invert = true) {
    MoebiusMap map(f, m);
    for (std::size_t i = 0; i < length; ++i) {
        double pick = rng.uniform01();
        if (pick < 0.30) {
            map.push(Translate{random_hpoint(f, m, rng, 2.0)});
        } else if (pick < 0.50) {
            if (f == Field::O) map.push(RotateOct{random_unit_imag(f, rng)});
            else map.push(Rotate{random_rotation(f, m, rng)});
        } else if (pick < 0.60) {
            if (f == Field::H) map.push(RotateQuat{random_unit(f, rng)});
            else if (f == Field::R || f == Field::C) map.push(Conjugate{});
            else map.push(RotateOct{random_unit_imag(f, rng)});
        } else if (pick < 0.80) {
            map.push(Dilate{std::exp(rng.uniform(-2.0, 2.0))});
        } else if (allow_invert) {
            map.push(Invert{});
        } else {
            map.push(Dilate{std::exp(rng.uniform(-2.0, 2.0))});
        }
    }
    return map;
}

} // namespace heismoeb
