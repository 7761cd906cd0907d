#pragma once

#include <stdexcept>
#include <string>

namespace repgames {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: non-finite points, negative speeds, malformed files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameters that violate a model or scheme constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate = 0.0)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace repgames
