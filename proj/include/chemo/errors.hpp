#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (s < 0, p < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// A certificate-level strict inequality or a nonzero-denominator requirement failed.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// The (theta, mu) search exhausted its budget. Not a proof of non-existence.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

/// No admissible (p, q) was found inside the retry cap.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// NaN, Inf or a negative overshoot in a solver step.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chemo
