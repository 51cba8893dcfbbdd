#pragma once

#include <stdexcept>
#include <string>

namespace limvam {

/// Base class for all numeric/structural failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroVariance : Error {
    using Error::Error;
};

struct CyclicGraph : Error {
    using Error::Error;
};

/// A covariance matrix that must be positive definite is not; the message
/// names the offending matrix.
struct NonPositiveDefinite : Error {
    using Error::Error;
};

struct SingularSystem : Error {
    using Error::Error;
};

struct InvalidCoefficient : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct DegenerateRow : Error {
    using Error::Error;
};

struct ZeroDiagonal : Error {
    using Error::Error;
};

struct UnstableTriple : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace limvam
