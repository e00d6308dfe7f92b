#pragma once

#include <stdexcept>
#include <string>

namespace tc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad argument, out-of-range index).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An input object fails one of its structural invariants (hermiticity, trace, ...).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A computation produced values outside its guaranteed numerical bands.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Amplitude would leak past the Fock-space truncation boundary.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Experiment configuration is malformed or inconsistent.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace tc
