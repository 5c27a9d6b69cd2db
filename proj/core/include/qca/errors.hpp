#pragma once

#include <stdexcept>
#include <string>

namespace qca {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: out-of-range index, mismatched dimension, bad parameter.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A state vector (or raw amplitude list) is not normalized.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// An operation requiring a bijective update rule received a non-invertible one.
class InvertibilityError : public Error {
 public:
  using Error::Error;
};

/// Two inputs that must have been derived from one another do not match.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A dense-matrix operation was requested beyond the supported dimension cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Structured-text input (rule file, experiment config) failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File system failure while reading inputs or writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not meet its convergence target. Carries the best estimate
/// reached so callers can report it.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved_estimate)
      : Error(what), achieved_estimate_(achieved_estimate) {}

  double achieved_estimate() const noexcept { return achieved_estimate_; }

 private:
  double achieved_estimate_;
};

}  // namespace qca
