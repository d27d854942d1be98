#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qrev/numerics/grid.hpp"

namespace qrev {

using numerics::UniformGrid;
using Complex = std::complex<double>;

enum class Representation { position, momentum };

/// Complex amplitudes sampled on a uniform grid in one representation.
class WaveFunction {
 public:
  /// Throws DimensionError when amplitudes and grid disagree in length.
  WaveFunction(UniformGrid grid, std::vector<Complex> amplitudes, Representation representation);

  const UniformGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Representation representation() const noexcept { return representation_; }

  /// Trapezoid integral of |amplitude|^2.
  double norm() const;

  /// Copy rescaled to unit norm. Throws NumericError on a zero state.
  WaveFunction normalized() const;

  /// Releases the amplitude buffer (for callers that post-process in place).
  std::vector<Complex> take_amplitudes() && { return std::move(amplitudes_); }

 private:
  UniformGrid grid_;
  std::vector<Complex> amplitudes_;
  Representation representation_;
};

}  // namespace qrev
