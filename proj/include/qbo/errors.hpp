#pragma once

#include <stdexcept>
#include <string>

namespace qbo {

// Base class for all numeric failures raised by the library. The CLI maps
// these to exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Gamma/digamma/trigamma evaluated at a non-positive integer.
struct pole_error : numeric_error {
    using numeric_error::numeric_error;
};

// Parameter outside the admissible domain (negative mass, v < 1/2, ...).
struct domain_error : numeric_error {
    using numeric_error::numeric_error;
};

// gamma/2 within the rejection band around the renormalized frequency w0,
// where the partial-fraction coefficients are individually singular.
struct critical_damping_error : numeric_error {
    using numeric_error::numeric_error;
};

// A series or quadrature failed to reach the requested tolerance.
struct convergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// Uncertainty product below the Heisenberg bound: corrupted moments.
struct uncertainty_error : numeric_error {
    using numeric_error::numeric_error;
};

// A cross-check between two routes to the same quantity failed.
struct consistency_error : numeric_error {
    using numeric_error::numeric_error;
};

// Result magnitude beyond the double-precision stability horizon.
struct overflow_error : numeric_error {
    using numeric_error::numeric_error;
};

}  // namespace qbo
