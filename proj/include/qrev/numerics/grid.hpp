#pragma once

#include <cstddef>
#include <vector>

namespace qrev::numerics {

/// Uniformly spaced sample points `start + i * step`, `0 <= i < count`.
class UniformGrid {
 public:
  /// Throws ContractError unless step > 0, count >= 2 and both ends are finite.
  UniformGrid(double start, double step, std::size_t count);

  /// Grid with `count` points spanning [first, last] inclusive.
  static UniformGrid spanning(double first, double last, std::size_t count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double last() const noexcept { return point(count_ - 1); }
  double length() const noexcept { return step_ * static_cast<double>(count_ - 1); }

  double point(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  std::vector<double> points() const;

  /// Same sampling up to a relative tolerance on start and step.
  bool matches(const UniformGrid& other, double rel_tol = 1e-12) const noexcept;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

}  // namespace qrev::numerics
