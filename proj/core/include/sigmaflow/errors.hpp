#pragma once

#include <stdexcept>
#include <string>

namespace sigmaflow {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sigma_1 <= 0 where the quotient operator (or the flow) requires Gamma_1^+.
///
/// `location` is the height coordinate s = cos(theta) of the offending node
/// when the violation comes from a sampled field, and NaN for pointwise
/// matrix operations.
class ConeViolation : public std::runtime_error {
 public:
  ConeViolation(const std::string& what, double min_sigma1, double location);

  double min_sigma1() const noexcept { return min_sigma1_; }
  double location() const noexcept { return location_; }

 private:
  double min_sigma1_;
  double location_;
};

/// A sampled integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double location);

  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// The adaptive time stepper could not find an acceptable step.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigmaflow
