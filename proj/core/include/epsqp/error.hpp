#pragma once

#include <stdexcept>
#include <string>

namespace epsqp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad grid, wrong potential, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The inputs were well-formed but the computation cannot proceed,
/// e.g. every sample of a field falls below the node threshold.
class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

}  // namespace epsqp
