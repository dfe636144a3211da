#pragma once

#include <stdexcept>
#include <string>

namespace fracscalar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral data that would not transform back to a real field.
class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

/// Negative-order operator applied to a field with a non-zero mean.
class MeanNotZero : public Error {
 public:
  using Error::Error;
};

/// Kernel quadrature whose truncated far field exceeds the error budget.
class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall(const std::string& what, double tail_relative)
      : Error(what), tail_relative_(tail_relative) {}
  double tail_relative() const { return tail_relative_; }

 private:
  double tail_relative_;
};

class NegativeInput : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

/// Raised by the time stepper when the solution leaves the representable range.
class Unstable : public Error {
 public:
  using Error::Error;
};

/// Invalid run/sweep configuration. `field()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace fracscalar
