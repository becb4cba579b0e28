#pragma once

#include <cstdint>
#include <random>

#include "heismoeb/heisenberg.hpp"

namespace heismoeb {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Deterministic random stream. Streams derived from the same (seed, salts)
/// produce identical sequences on every platform and run.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t salt1 = 0, std::uint64_t salt2 = 0)
        : eng_(detail::splitmix64(seed ^ detail::splitmix64(salt1 ^ detail::splitmix64(salt2)))) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    RngStream fork(std::uint64_t salt) { return RngStream(eng_(), salt); }

private:
    std::mt19937_64 eng_;
};

inline KNum random_knum(Field f, RngStream& rng, double scale = 1.0) {
    KNum x(f);
    for (std::size_t i = 0; i < field_dim(f); ++i) x.c[i] = rng.uniform(-scale, scale);
    return x;
}

inline KNum random_imag(Field f, RngStream& rng, double scale = 1.0) {
    KNum x = random_knum(f, rng, scale);
    x.c[0] = 0.0;
    return x;
}

inline KNum random_unit(Field f, RngStream& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        KNum x = random_knum(f, rng);
        double n = norm(x);
        if (n > 1e-3) return x / n;
    }
    return KNum::one(f);
}

inline KNum random_unit_imag(Field f, RngStream& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        KNum x = random_imag(f, rng);
        double n = norm(x);
        if (n > 1e-3) return x / n;
    }
    return KNum::basis(f, 1);
}

inline KVector random_kvector(Field f, std::size_t m, RngStream& rng, double scale = 1.0) {
    KVector z(f, m);
    for (std::size_t i = 0; i < m; ++i) z[i] = random_knum(f, rng, scale);
    return z;
}

/// Point with coefficients uniform in [-scale, scale].
inline HPoint random_hpoint(Field f, std::size_t m, RngStream& rng, double scale = 1.0) {
    return HPoint(random_kvector(f, m, rng, scale), random_imag(f, rng, scale));
}

/// Sampling plan used by the condition checkers: box radii 1 and 10 mixed,
/// optionally spread across dilation scales 2^k to probe homogeneity.
inline HPoint sample_point(Field f, std::size_t m, RngStream& rng, int dilation_span = 8) {
    double scale = rng.uniform01() < 0.5 ? 1.0 : 10.0;
    HPoint p = random_hpoint(f, m, rng, scale);
    if (dilation_span > 0 && rng.uniform01() < 0.3) {
        int k = static_cast<int>(rng.below(2 * dilation_span + 1)) - dilation_span;
        p = h_dilate(p, std::ldexp(1.0, k));
    }
    return p;
}

/// Point at gauge distance >= eps from the origin (resamples degenerates).
inline HPoint sample_point_away_from_origin(Field f, std::size_t m, RngStream& rng,
                                            int dilation_span = 8, double eps = 1e-6) {
    for (int tries = 0; tries < 256; ++tries) {
        HPoint p = sample_point(f, m, rng, dilation_span);
        if (koranyi_gauge(p) > eps) return p;
    }
    throw MathDomainError("failed to sample a point away from the origin");
}

} // namespace heismoeb
