#pragma once

#include <stdexcept>
#include <string>

namespace painleve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A printed denominator (w, w-1, w-z, z, ...) vanishes at the given point.
class SingularInput : public Error {
public:
    using Error::Error;
};

/// Parameter set does not match the equation's schema or the transform's family.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Iterative procedure (root polish, least squares, bisection) did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Integration could not continue. Carries the last z reached with a good state.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, double last_good_z)
        : Error(what + " (last good z = " + std::to_string(last_good_z) + ")"),
          last_good_z_(last_good_z) {}

    [[nodiscard]] double last_good_z() const noexcept { return last_good_z_; }

private:
    double last_good_z_;
};

/// A shooting run could not be classified as over- or under-shooting.
class ClassificationError : public Error {
public:
    using Error::Error;
};

/// Internal invariant broken; signals a bug rather than bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace painleve
