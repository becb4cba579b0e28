#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heismoeb {

inline constexpr const char* kVersion = "1.0.0";

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixing elements of different composition algebras.
struct FieldMismatchError : Error {
    using Error::Error;
};

/// Vectors/matrices of incompatible sizes.
struct ShapeMismatchError : Error {
    using Error::Error;
};

/// Undefined mathematical operation (division by zero, degenerate input, ...).
struct MathDomainError : Error {
    using Error::Error;
};

/// Numerical solver failed to converge.
struct SolverError : Error {
    using Error::Error;
};

/// Relative difference, guarded against tiny denominators.
inline double rel_err(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1e-300) return 0.0;
    return std::abs(a - b) / scale;
}

} // namespace heismoeb
