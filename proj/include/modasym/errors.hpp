#pragma once

#include <stdexcept>
#include <string>

namespace modasym {

// Root of every error raised by the library. The CLI maps subclasses onto
// exit codes (usage/domain -> 2, numeric -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Weight not supported by the Eisenstein construction (w = 2 or odd).
class UnsupportedWeightError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parameters outside the regime where an asymptotic formula is stated.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Base for numeric failures (precision, truncation, quadrature).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Exact division of integer series failed.
class DivisibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Working precision insufficient or would exceed its ceiling.
class PrecisionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A truncated sum has a tail above tolerance. Carries a suggested size.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, long suggested)
      : NumericError(what), suggested_(suggested) {}
  long suggested() const noexcept { return suggested_; }

 private:
  long suggested_;
};

/// Adaptive quadrature did not reach tolerance within its panel budget.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate)
      : NumericError(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// An invariant that exact arithmetic guarantees was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Duality sign was not uniform across pairs.
class DualityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace modasym
