#pragma once

#include <stdexcept>
#include <string>

namespace corot {

// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by root finding when the bracket does not straddle a sign change.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, double lower_value, double upper_value)
      : std::runtime_error(what), lower_value_(lower_value), upper_value_(upper_value) {}

  double lower_value() const noexcept { return lower_value_; }
  double upper_value() const noexcept { return upper_value_; }

 private:
  double lower_value_;
  double upper_value_;
};

// Raised when a series fit cannot reach its residual gate.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace corot
