#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qrev/wave_function.hpp"

namespace qrev {

/// Probability density |psi|^2 sampled on a grid (rho(x) or gamma(p)).
class Density {
 public:
  /// Throws DimensionError on a length mismatch, NumericError on negative or non-finite values.
  Density(UniformGrid grid, std::vector<double> values);

  const UniformGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double integral() const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

struct Moments {
  double mean;
  double variance;
};

/// Pointwise squared modulus.
Density density(const WaveFunction& wf);

/// Mean and variance. Variance round-off down to -1e-12 is clamped to zero; anything more
/// negative throws NumericError (it usually means the grid truncates the state).
Moments moments(const Density& d);

/// A = \int psi_t^* psi_0. Both states must share grid and representation (DimensionError).
Complex autocorrelation(const WaveFunction& wf_t, const WaveFunction& wf_0);

/// Delta x * Delta p from the two densities.
double uncertainty_product(const Density& position, const Density& momentum);

}  // namespace qrev
