#include "qrev/wave_function.hpp"

#include <cmath>
#include <string>

#include "qrev/errors.hpp"
#include "qrev/numerics/quadrature.hpp"

namespace qrev {

WaveFunction::WaveFunction(UniformGrid grid, std::vector<Complex> amplitudes,
                           Representation representation)
    : grid_(grid), amplitudes_(std::move(amplitudes)), representation_(representation) {
  if (amplitudes_.size() != grid_.count()) {
    throw DimensionError("WaveFunction: " + std::to_string(amplitudes_.size()) +
                         " amplitudes on a grid of " + std::to_string(grid_.count()) + " points");
  }
}

double WaveFunction::norm() const {
  std::vector<double> sq(amplitudes_.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(amplitudes_[i]);
  return numerics::integrate(sq, grid_);
}

WaveFunction WaveFunction::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw NumericError("WaveFunction::normalized: state has zero norm");
  const double scale = 1.0 / std::sqrt(n);
  std::vector<Complex> out(amplitudes_);
  for (auto& a : out) a *= scale;
  return WaveFunction(grid_, std::move(out), representation_);
}

}  // namespace qrev
