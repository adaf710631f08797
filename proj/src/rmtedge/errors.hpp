#pragma once

#include <stdexcept>
#include <string>

namespace rmtedge {

/// Input outside the mathematical domain of a function (non-finite x, x <= 0 for Gamma, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed call: empty rule, a >= b, N > n for Wishart, and so on.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative refinement did not reach its tolerance. Carries the last two estimates.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last, double previous)
      : std::runtime_error(what), last_(last), previous_(previous) {}

  double last() const noexcept { return last_; }
  double previous() const noexcept { return previous_; }

 private:
  double last_;
  double previous_;
};

/// A numerical routine failed for a reason other than slow refinement
/// (eigensolver stalled, kernel operator not a contraction on the window).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmtedge
