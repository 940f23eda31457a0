#pragma once

#include <stdexcept>
#include <string>

namespace hyperfront {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad inputs: malformed config, out-of-range parameters, wrong regime.
struct ValidationError : Error {
    using Error::Error;
};

/// A numerical procedure failed to meet its contract (tolerance not reached,
/// trapping region violated, event not bracketed, ...).
struct NumericalError : Error {
    using Error::Error;
};

/// Wrong propagation regime for the requested operation.
struct RegimeError : ValidationError {
    using ValidationError::ValidationError;
};

/// Quadratic degenerates to lower order (sonic speed): roots are not defined
/// through the quadratic formula.
struct DegenerateQuadraticError : ValidationError {
    using ValidationError::ValidationError;
};

/// No monotone front connection exists at the requested speed.  Carries the
/// discriminant of the linearization about the invaded state; a negative value
/// means complex roots, i.e. oscillatory decay incompatible with monotonicity.
struct NoMonotoneFrontError : ValidationError {
    NoMonotoneFrontError(const std::string& what, double discriminant_)
        : ValidationError(what), discriminant(discriminant_) {}
    double discriminant;
};

/// Time step rejected by the CFL stability condition.
struct CflError : ValidationError {
    using ValidationError::ValidationError;
};

/// A requested level is never crossed by the sampled field.
struct NoCrossingError : NumericalError {
    using NumericalError::NumericalError;
};

/// Weight slope evaluated at (or integrated across) a singular point.
struct SingularWeightError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace hyperfront
