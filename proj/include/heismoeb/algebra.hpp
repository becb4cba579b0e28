#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <vector>

#include "heismoeb/common.hpp"

namespace heismoeb {

/// The four normed division algebras.
enum class Field { R, C, H, O };

inline constexpr std::size_t field_dim(Field f) {
    switch (f) {
        case Field::R: return 1;
        case Field::C: return 2;
        case Field::H: return 4;
        case Field::O: return 8;
    }
    return 0;
}

inline const char* field_name(Field f) {
    switch (f) {
        case Field::R: return "R";
        case Field::C: return "C";
        case Field::H: return "H";
        case Field::O: return "O";
    }
    return "?";
}

inline Field field_from_name(const std::string& s) {
    if (s == "R") return Field::R;
    if (s == "C") return Field::C;
    if (s == "H") return Field::H;
    if (s == "O") return Field::O;
    throw Error("unknown field tag '" + s + "' (expected R, C, H or O)");
}

namespace detail {

// Cayley-Dickson product on coefficient blocks of width n:
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), conj negating indices 1..n-1.
inline void cd_mul(std::size_t n, const double* x, const double* y, double* out) {
    if (n == 1) {
        out[0] = x[0] * y[0];
        return;
    }
    const std::size_t h = n / 2;
    const double *a = x, *b = x + h, *c = y, *d = y + h;
    std::array<double, 4> t{}, u{}, cj{};
    // ac
    cd_mul(h, a, c, out);
    // conj(d) b
    cj[0] = d[0];
    for (std::size_t i = 1; i < h; ++i) cj[i] = -d[i];
    cd_mul(h, cj.data(), b, t.data());
    for (std::size_t i = 0; i < h; ++i) out[i] -= t[i];
    // d a
    cd_mul(h, d, a, out + h);
    // b conj(c)
    cj[0] = c[0];
    for (std::size_t i = 1; i < h; ++i) cj[i] = -c[i];
    cd_mul(h, b, cj.data(), u.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] += u[i];
}

} // namespace detail

/// Element of K given by real coefficients over the standard basis (1, i, j, k, ...).
struct KNum {
    Field field = Field::R;
    std::array<double, 8> c{};

    KNum() = default;
    explicit KNum(Field f) : field(f) {}
    KNum(Field f, std::initializer_list<double> coeffs) : field(f) {
        if (coeffs.size() != field_dim(f))
            throw ShapeMismatchError("coefficient count does not match field dimension");
        std::size_t i = 0;
        for (double v : coeffs) c[i++] = v;
    }
    KNum(Field f, const std::vector<double>& coeffs) : field(f) {
        if (coeffs.size() != field_dim(f))
            throw ShapeMismatchError("coefficient count does not match field dimension");
        for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    }

    std::size_t dim() const { return field_dim(field); }

    static KNum real(Field f, double r) {
        KNum x(f);
        x.c[0] = r;
        return x;
    }
    static KNum zero(Field f) { return KNum(f); }
    static KNum one(Field f) { return real(f, 1.0); }
    /// k-th standard basis element (k = 0 is the unit).
    static KNum basis(Field f, std::size_t k) {
        if (k >= field_dim(f)) throw ShapeMismatchError("basis index out of range");
        KNum x(f);
        x.c[k] = 1.0;
        return x;
    }

    double re() const { return c[0]; }
};

inline void require_same_field(const KNum& x, const KNum& y) {
    if (x.field != y.field)
        throw FieldMismatchError("operands live in different algebras");
}

inline KNum operator+(const KNum& x, const KNum& y) {
    require_same_field(x, y);
    KNum out(x.field);
    for (std::size_t i = 0; i < x.dim(); ++i) out.c[i] = x.c[i] + y.c[i];
    return out;
}

inline KNum operator-(const KNum& x, const KNum& y) {
    require_same_field(x, y);
    KNum out(x.field);
    for (std::size_t i = 0; i < x.dim(); ++i) out.c[i] = x.c[i] - y.c[i];
    return out;
}

inline KNum operator-(const KNum& x) {
    KNum out(x.field);
    for (std::size_t i = 0; i < x.dim(); ++i) out.c[i] = -x.c[i];
    return out;
}

inline KNum operator*(const KNum& x, double s) {
    KNum out(x.field);
    for (std::size_t i = 0; i < x.dim(); ++i) out.c[i] = x.c[i] * s;
    return out;
}
inline KNum operator*(double s, const KNum& x) { return x * s; }
inline KNum operator/(const KNum& x, double s) { return x * (1.0 / s); }

/// Cayley-Dickson product. Associative for R, C, H; alternative for O.
inline KNum k_mul(const KNum& x, const KNum& y) {
    require_same_field(x, y);
    KNum out(x.field);
    detail::cd_mul(x.dim(), x.c.data(), y.c.data(), out.c.data());
    return out;
}
inline KNum operator*(const KNum& x, const KNum& y) { return k_mul(x, y); }

/// Conjugation: negates every non-real coefficient.
inline KNum k_conj(const KNum& x) {
    KNum out = -x;
    out.c[0] = x.c[0];
    return out;
}

inline double norm_sq(const KNum& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += x.c[i] * x.c[i];
    return s;
}

inline double norm(const KNum& x) { return std::sqrt(norm_sq(x)); }

/// Multiplicative inverse conj(x)/|x|^2.
inline KNum k_inv(const KNum& x) {
    double n2 = norm_sq(x);
    if (n2 <= 0.0) throw MathDomainError("inverse of zero");
    return k_conj(x) / n2;
}

/// Splits x = re * 1 + im with im purely imaginary.
inline std::pair<double, KNum> k_decompose(const KNum& x) {
    KNum im = x;
    im.c[0] = 0.0;
    return {x.c[0], im};
}

/// Imaginary part as an element of K.
inline KNum k_im(const KNum& x) {
    KNum im = x;
    im.c[0] = 0.0;
    return im;
}

inline bool approx_eq(const KNum& x, const KNum& y, double tol = 1e-12) {
    if (x.field != y.field) return false;
    for (std::size_t i = 0; i < x.dim(); ++i)
        if (std::abs(x.c[i] - y.c[i]) > tol) return false;
    return true;
}

/// Textual form, e.g. "H:[1,0,2,0]".
inline std::string to_string(const KNum& x) {
    std::ostringstream os;
    os << field_name(x.field) << ":[";
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (i) os << ",";
        os << x.c[i];
    }
    os << "]";
    return os.str();
}

/// Ordered tuple of K-numbers, one algebra across all entries.
struct KVector {
    Field field = Field::R;
    std::vector<KNum> entries;

    KVector() = default;
    KVector(Field f, std::size_t m) : field(f), entries(m, KNum(f)) {}
    explicit KVector(std::vector<KNum> e) {
        if (e.empty()) throw ShapeMismatchError("KVector needs at least one entry");
        field = e[0].field;
        for (const auto& x : e)
            if (x.field != field) throw FieldMismatchError("mixed fields in KVector");
        entries = std::move(e);
    }

    std::size_t size() const { return entries.size(); }
    const KNum& operator[](std::size_t i) const { return entries[i]; }
    KNum& operator[](std::size_t i) { return entries[i]; }
};

inline void require_same_shape(const KVector& a, const KVector& b) {
    if (a.field != b.field) throw FieldMismatchError("vectors live in different algebras");
    if (a.size() != b.size()) throw ShapeMismatchError("vector lengths differ");
}

inline KVector operator+(const KVector& a, const KVector& b) {
    require_same_shape(a, b);
    KVector out(a.field, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline KVector operator-(const KVector& a) {
    KVector out(a.field, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline KVector operator*(const KVector& a, double s) {
    KVector out(a.field, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}
inline KVector operator*(double s, const KVector& a) { return a * s; }

/// Hermitian pairing <a,b> = sum_i a_i conj(b_i); <a,a> = ||a||^2.
inline KNum vec_inner(const KVector& a, const KVector& b) {
    require_same_shape(a, b);
    KNum s(a.field);
    for (std::size_t i = 0; i < a.size(); ++i) s = s + k_mul(a[i], k_conj(b[i]));
    return s;
}

inline double vec_norm_sq(const KVector& a) {
    double s = 0.0;
    for (const auto& x : a.entries) s += norm_sq(x);
    return s;
}

inline double vec_norm(const KVector& a) { return std::sqrt(vec_norm_sq(a)); }

/// Symplectic form omega(a,b) = Im sum_i conj(b_i) a_i.
///
/// The factor order matters for H and O: this is the unique Im(K)-valued
/// antisymmetric pairing (up to mirror image) under which rotations, the
/// Sp(1)/S_mu actions and the boundary inversion all preserve the gauge
/// metric in every field. For R and C it coincides with Im vec_inner(a,b).
inline KNum symplectic_omega(const KVector& a, const KVector& b) {
    require_same_shape(a, b);
    KNum s(a.field);
    for (std::size_t i = 0; i < a.size(); ++i) s = s + k_mul(k_conj(b[i]), a[i]);
    return k_im(s);
}

} // namespace heismoeb
