#pragma once

#include <cstddef>
#include <vector>

namespace qrev::numerics {

struct AiryValue {
  double ai;
  double ai_prime;
};

/// Supported argument range of `airy`.
inline constexpr double kAiryMinArgument = -600.0;
inline constexpr double kAiryMaxArgument = 200.0;

/// Ai(x) and Ai'(x) for x in [-600, 200]; absolute error below 1e-10 throughout.
/// Throws DomainError outside that range.
AiryValue airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

/// Zeros -z_n of Ai (stored as positive z_n, n = 1, 2, ...) with Ai'(-z_n).
/// Immutable once built; share it read-only.
class AiryTable {
 public:
  /// Newton refinement of each zero from the asymptotic seed [3 pi (4n-1) / 8]^(2/3).
  /// Throws ContractError for n_max < 1 and ConvergenceError if a root does not settle
  /// within 50 iterations.
  static AiryTable compute(std::size_t n_max);

  std::size_t size() const noexcept { return zeros_.size(); }
  /// 1-based, matching the usual z_n labelling.
  double zero(std::size_t n) const { return zeros_.at(n - 1); }
  double derivative_at_zero(std::size_t n) const { return derivatives_.at(n - 1); }
  /// Normalization |Ai'(-z_n)|^-1 of the n-th bouncer eigenfunction.
  double normalization(std::size_t n) const;

  const std::vector<double>& zeros() const noexcept { return zeros_; }
  const std::vector<double>& derivative_at_zeros() const noexcept { return derivatives_; }

 private:
  std::vector<double> zeros_;
  std::vector<double> derivatives_;
};

/// Convenience spelling of AiryTable::compute.
AiryTable airy_zeros(std::size_t n_max);

/// Asymptotic seed for the n-th zero.
double airy_zero_seed(std::size_t n);

namespace detail {

// Exposed for cross-validation of the two evaluation branches around the switch points.
AiryValue airy_maclaurin(double x);
AiryValue airy_asymptotic(double x);

inline constexpr double kSeriesLimitPositive = 6.0;
inline constexpr double kSeriesLimitNegative = -8.0;

}  // namespace detail

}  // namespace qrev::numerics
