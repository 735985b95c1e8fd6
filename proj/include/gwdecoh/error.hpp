#pragma once

#include <stdexcept>
#include <string>

namespace gwdecoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic or comparison on quantities with mismatched dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the domain of an operation (negative spectrum,
/// non-positive mass, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A spectrum was evaluated at an angular frequency outside its valid band.
class BandError : public Error {
 public:
  BandError(const std::string& what, double omega) : Error(what), omega_(omega) {}
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

/// The spectrum band does not cover the region where the variance integrand
/// matters; carries the estimated truncated contribution.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail_estimate, double partial_value)
      : Error(what), tail_estimate_(tail_estimate), partial_value_(partial_value) {}
  double tail_estimate() const noexcept { return tail_estimate_; }
  double partial_value() const noexcept { return partial_value_; }

 private:
  double tail_estimate_;
  double partial_value_;
};

/// Malformed time series or simulation settings.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario file; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gwdecoh
