#pragma once

#include <stdexcept>
#include <string>

namespace chowfm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad argument value (out-of-range weight, |S| < 2, i == j, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Operands built over different variable tables, or a variable-name clash.
struct StructuralError : Error {
    using Error::Error;
};

/// A homogeneous input was required but not supplied.
struct DegreeError : Error {
    using Error::Error;
};

/// A walk or processed family violates superset-first order.
struct WalkOrderError : Error {
    using Error::Error;
};

/// A computation would exceed a configured size cap.
struct SizeCapError : Error {
    using Error::Error;
};

/// A ring map does not send every source relation into the target ideal.
struct MapError : Error {
    using Error::Error;
};

} // namespace chowfm
