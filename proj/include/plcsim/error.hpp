#pragma once

#include <stdexcept>
#include <string>

namespace plcsim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter (bad N, negative variance, p outside [0,1], ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Sequence lengths that do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range index or otherwise invalid argument value.
class InputError : public Error {
 public:
  using Error::Error;
};

// PAPR of an all-zero signal.
class UndefinedPaprError : public Error {
 public:
  using Error::Error;
};

// Optimized-threshold denominator beta <= 0.
class DegenerateThresholdError : public Error {
 public:
  DegenerateThresholdError(const std::string& what, double beta)
      : Error(what), beta_(beta) {}
  double beta() const noexcept { return beta_; }

 private:
  double beta_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace plcsim
