#pragma once

#include <stdexcept>
#include <string>

namespace gwmaj {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An infinite-support sum could not be truncated within the allowed budget.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Bracketed solver called on an interval without a sign change.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A check that must hold exactly (identity, proven inequality) failed.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gwmaj
