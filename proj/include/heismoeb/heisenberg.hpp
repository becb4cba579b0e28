#pragma once

#include <limits>
#include <optional>
#include <utility>

#include "heismoeb/algebra.hpp"

namespace heismoeb {

inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

/// Extended distances take values in [0, +inf]; +inf encodes the remote point
/// conventions d(p, inf) = +inf, d(inf, inf) = 0.
using ExtendedDistance = double;

inline bool is_finite_distance(ExtendedDistance d) { return std::isfinite(d); }

/// Point of the K-Heisenberg group: zeta in K^(n-1), v in Im(K).
struct HPoint {
    KVector zeta;
    KNum v;

    HPoint() = default;
    HPoint(KVector z, KNum vert) : zeta(std::move(z)), v(std::move(vert)) {
        if (zeta.field != v.field)
            throw FieldMismatchError("zeta and v live in different algebras");
        double scale = std::max(1.0, norm(v));
        if (std::abs(v.c[0]) > 1e-9 * scale)
            throw MathDomainError("vertical part must be purely imaginary");
        v.c[0] = 0.0;
    }

    Field field() const { return zeta.field; }
    /// n-1, the number of horizontal coordinates.
    std::size_t dim() const { return zeta.size(); }
};

inline HPoint h_origin(Field f, std::size_t m) {
    return HPoint(KVector(f, m), KNum(f));
}

/// First horizontal unit point (e_1, 0).
inline HPoint h_unit_horizontal(Field f, std::size_t m) {
    KVector z(f, m);
    z[0] = KNum::one(f);
    return HPoint(std::move(z), KNum(f));
}

/// First vertical unit point (0, f_1). Undefined over R, where Im(K) = {0}.
inline HPoint h_unit_vertical(Field f, std::size_t m) {
    if (f == Field::R) throw MathDomainError("Im(R) is trivial; no vertical unit");
    return HPoint(KVector(f, m), KNum::basis(f, 1));
}

/// Group law (z,v)*(z',v') = (z+z', v+v'+2 omega(z,z')).
inline HPoint h_mul(const HPoint& p, const HPoint& q) {
    return HPoint(p.zeta + q.zeta, p.v + q.v + 2.0 * symplectic_omega(p.zeta, q.zeta));
}

inline HPoint h_inv(const HPoint& p) { return HPoint(-p.zeta, -p.v); }

/// Horizontal/vertical split ((z,0), (0,v)); their product recomposes p.
inline std::pair<HPoint, HPoint> h_split(const HPoint& p) {
    return {HPoint(p.zeta, KNum(p.field())), HPoint(KVector(p.field(), p.dim()), p.v)};
}

/// Gauge |(z,v)| = |-||z||^2 + v|^(1/2) = (||z||^4 + |v|^2)^(1/4).
inline double koranyi_gauge(const HPoint& p) {
    double n2 = vec_norm_sq(p.zeta);
    return std::pow(n2 * n2 + norm_sq(p.v), 0.25);
}

/// The quantity -||z||^2 + v whose modulus is the squared gauge.
inline KNum gauge_numerator(const HPoint& p) {
    KNum a = p.v;
    a.c[0] = -vec_norm_sq(p.zeta);
    return a;
}

inline bool approx_eq(const HPoint& p, const HPoint& q, double tol = 1e-12) {
    if (p.field() != q.field() || p.dim() != q.dim()) return false;
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (!approx_eq(p.zeta[i], q.zeta[i], tol)) return false;
    return approx_eq(p.v, q.v, tol);
}

/// Boundary point: a finite Heisenberg point or the remote point.
struct BoundaryPoint {
    std::optional<HPoint> finite;

    BoundaryPoint() = default;
    BoundaryPoint(HPoint p) : finite(std::move(p)) {}
    static BoundaryPoint infinity() { return BoundaryPoint(); }

    bool is_infinity() const { return !finite.has_value(); }
    const HPoint& point() const {
        if (!finite) throw MathDomainError("remote point has no coordinates");
        return *finite;
    }
};

inline bool approx_eq(const BoundaryPoint& p, const BoundaryPoint& q, double tol = 1e-12) {
    if (p.is_infinity() || q.is_infinity()) return p.is_infinity() == q.is_infinity();
    return approx_eq(p.point(), q.point(), tol);
}

/// Largest coefficient deviation between p and q, relative to the coefficient
/// scale. The gauge distance of nearby points grows like the square root of
/// the vertical displacement, so identities that are exact in coordinates are
/// compared here rather than through the metric.
inline double coord_rel_residual(const HPoint& p, const HPoint& q) {
    if (p.field() != q.field() || p.dim() != q.dim()) return kPlusInfinity;
    double scale = 1e-300, diff = 0.0;
    auto visit = [&](const KNum& a, const KNum& b) {
        for (std::size_t i = 0; i < a.dim(); ++i) {
            scale = std::max({scale, std::abs(a.c[i]), std::abs(b.c[i])});
            diff = std::max(diff, std::abs(a.c[i] - b.c[i]));
        }
    };
    for (std::size_t i = 0; i < p.dim(); ++i) visit(p.zeta[i], q.zeta[i]);
    visit(p.v, q.v);
    return diff / scale;
}

inline ExtendedDistance koranyi_dist(const HPoint& p, const HPoint& q) {
    return koranyi_gauge(h_mul(h_inv(q), p));
}

inline ExtendedDistance koranyi_dist(const BoundaryPoint& p, const BoundaryPoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity() || q.is_infinity()) return kPlusInfinity;
    return koranyi_dist(p.point(), q.point());
}

/// Parabolic dilation D_delta(z,v) = (delta z, delta^2 v).
inline HPoint h_dilate(const HPoint& p, double delta) {
    return HPoint(p.zeta * delta, p.v * (delta * delta));
}

/// Conjugation J(z,v) = (conj(z), -v). A gauge-metric isometry over R and C;
/// over H and O only the single-point parity gauge(Jp) = gauge(p) survives.
inline HPoint h_conjugate(const HPoint& p) {
    KVector z(p.field(), p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) z[i] = k_conj(p.zeta[i]);
    return HPoint(std::move(z), -p.v);
}

} // namespace heismoeb
