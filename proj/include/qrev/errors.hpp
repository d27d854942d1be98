#pragma once

#include <stdexcept>
#include <string>

namespace qrev {

// Two arrays or grids that must line up do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's documented precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the range an evaluator supports.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite input, underflow, or a result that violates a numeric sanity bound.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A grid does not cover or resolve the state it is asked to carry.
class GridError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Eigen-expansion completeness fell short; `achieved` is the coefficient norm sum.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, double achieved)
      : NumericError(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class DetectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrev
