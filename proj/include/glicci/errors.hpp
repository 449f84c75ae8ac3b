#pragma once

#include <stdexcept>
#include <string>

namespace glicci {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in GF(p)") {}
};

struct InvalidInput : Error {
    using Error::Error;
};

/// Hilbert function did not stabilize: the ideal is not the cone over a finite scheme.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Random skew matrices kept producing the wrong Hilbert function.
struct DegeneracyError : Error {
    using Error::Error;
};

/// No dehomogenizing linear form avoiding the scheme was found.
struct BadPosition : Error {
    using Error::Error;
};

/// The extracted subscheme had the wrong degree or failed the linkage check.
struct ExtractionError : Error {
    using Error::Error;
};

struct FactorizationError : Error {
    using Error::Error;
};

}  // namespace glicci
