#include "qrev/numerics/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::numerics {

UniformGrid::UniformGrid(double start, double step, std::size_t count)
    : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step)) {
    throw ContractError("UniformGrid: start and step must be finite");
  }
  if (!(step > 0.0)) {
    throw ContractError("UniformGrid: step must be positive, got " + std::to_string(step));
  }
  if (count < 2) {
    throw ContractError("UniformGrid: need at least 2 points, got " + std::to_string(count));
  }
}

UniformGrid UniformGrid::spanning(double first, double last, std::size_t count) {
  if (count < 2) {
    throw ContractError("UniformGrid::spanning: need at least 2 points");
  }
  return UniformGrid(first, (last - first) / static_cast<double>(count - 1), count);
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = point(i);
  return out;
}

bool UniformGrid::matches(const UniformGrid& other, double rel_tol) const noexcept {
  if (count_ != other.count_) return false;
  const double scale = std::max(std::abs(step_), std::abs(other.step_));
  if (std::abs(step_ - other.step_) > rel_tol * scale) return false;
  // start compared on the scale of the grid extent so a start of 0 is not special
  const double extent = std::max({std::abs(start_), std::abs(other.start_), length()});
  return std::abs(start_ - other.start_) <= rel_tol * extent;
}

}  // namespace qrev::numerics
