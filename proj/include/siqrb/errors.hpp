#pragma once

#include <stdexcept>
#include <string>

namespace siqrb {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A supplied value violates a model or file-format invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// A rate that must be strictly positive was zero or negative.
struct NonPositiveRequiredRate : ValidationError {
    explicit NonPositiveRequiredRate(std::string field_name)
        : ValidationError(field_name + ": must be strictly positive"), field(std::move(field_name))
    {
    }
    std::string field;
};

/// A rate that may be zero was negative.
struct NegativeOptionalRate : ValidationError {
    explicit NegativeOptionalRate(std::string field_name)
        : ValidationError(field_name + ": must be nonnegative"), field(std::move(field_name))
    {
    }
    std::string field;
};

/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// Control value outside the admissible set [0, 1].
struct ControlOutOfRange : Error {
    using Error::Error;
};

/// Cost weight W must be strictly positive.
struct NonPositiveWeight : Error {
    using Error::Error;
};

/// A state component became NaN or infinite during integration.
struct NonFiniteState : Error {
    using Error::Error;
};

/// Two series that must share a time grid do not.
struct GridMismatch : Error {
    using Error::Error;
};

/// The zero eigenvalue required by the bifurcation analysis is not simple.
struct DegenerateEigenstructure : Error {
    using Error::Error;
};

/// Malformed input file; the message carries the offending location.
struct ParseError : Error {
    using Error::Error;
};

/// Observation times are not strictly increasing.
struct NonMonotoneTime : Error {
    using Error::Error;
};

/// Filesystem read/write failure.
struct IoError : Error {
    using Error::Error;
};

/// A gradient check was requested across points where the control projection is active.
struct ProjectionActive : Error {
    using Error::Error;
};

} // namespace siqrb
