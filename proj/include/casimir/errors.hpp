#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the domain of a formula (x = 0 pole, p < 1, missing mirror, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical method stopped before meeting its tolerance.
/// Carries the best estimate reached so callers can still report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}

  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double best_;
  double error_;
};

/// Consecutive dispersion samples could not be joined into one branch.
class BranchTrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
