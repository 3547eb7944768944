#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skr {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The far-field transmissivity formula was asked for omega >= omega0.
class FarFieldViolation : public std::domain_error {
 public:
  FarFieldViolation(const std::string& what, double ratio)
      : std::domain_error(what), ratio_(ratio) {}
  // The offending transmissivity (omega / omega0)^2, > 1.
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

// Adaptive quadrature ran out of subdivisions before meeting tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// Bob collects (numerically) all of the beam; Eve's fraction is undefined.
class DegenerateChannel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Heterodyne conditioning hit a singular measured block.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration / sweep validation failure; carries every violation found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skr
