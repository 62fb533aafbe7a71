#pragma once

#include <stdexcept>
#include <string>

namespace bullen {

/// Argument outside the admissible range of an operation (window too wide,
/// point outside the interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A smoothness precondition failed, e.g. a C^2 bound requested for a
/// function that is only Lipschitz.
class ClassError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid parameters supplied by the caller (k < 2, empty window list, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised before any computation when a run configuration is unusable.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive integration ran out of subdivisions before meeting the tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

}  // namespace bullen
