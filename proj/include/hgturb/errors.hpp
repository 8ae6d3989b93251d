#pragma once

#include <stdexcept>
#include <string>

namespace hgturb {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of the numerics themselves (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A Pochhammer factor in a hypergeometric denominator vanished.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Series failed to converge, or a result failed a consistency assertion.
class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Channel parameters put C1 or C2 at or below zero.
class RegimeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Quadrature did not converge under node doubling.
class QuadratureResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hgturb
