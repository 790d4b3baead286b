#pragma once

#include <stdexcept>
#include <string>

namespace vstate {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Geometry or arithmetic broke down (degenerate chord, singular matrix, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Too few usable samples for a fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Throws PreconditionError with `what` when `cond` is false.
void require(bool cond, const std::string& what);

}  // namespace vstate
