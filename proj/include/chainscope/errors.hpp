#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chainscope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-range indices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (grid sizes, thresholds, catalog parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values produced during integration or evaluation.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::vector<double> point = {})
      : Error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

/// A one-form or Hamiltonian violates a structural requirement.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConvexityError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Order fit of a deformation family is not close to an integer.
class AnalyticityError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chainscope
