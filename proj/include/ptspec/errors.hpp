#pragma once

#include <stdexcept>
#include <string>

namespace ptspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method hit its iteration cap.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// The requested model/parameter combination has no implementation.
class UnsupportedModel : public Error {
public:
    using Error::Error;
};

/// A contour point lands exactly on a pole of the potential.
class SingularPoint : public Error {
public:
    using Error::Error;
};

/// A non-real eigenvalue without a conjugate partner.
class UnpairedComplexValue : public Error {
public:
    using Error::Error;
};

class InsufficientLevels : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ptspec
