#include "qrev/state.hpp"

#include <cmath>
#include <string>

#include "qrev/errors.hpp"
#include "qrev/numerics/quadrature.hpp"

namespace qrev {

namespace {
constexpr double kVarianceClamp = 1e-12;
}

Density::Density(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw DimensionError("Density: " + std::to_string(values_.size()) + " values on a grid of " +
                         std::to_string(grid_.count()) + " points");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw NumericError("Density: invalid value at index " + std::to_string(i));
    }
  }
}

double Density::integral() const { return numerics::integrate(values_, grid_); }

Density density(const WaveFunction& wf) {
  const auto amps = wf.amplitudes();
  std::vector<double> values(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) values[i] = std::norm(amps[i]);
  return Density(wf.grid(), std::move(values));
}

Moments moments(const Density& d) {
  const auto& g = d.grid();
  const auto v = d.values();
  const std::size_t n = v.size();
  // Trapezoid weights inline: a single pass keeps this cheap inside the time loop.
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    m0 += w * v[i];
    m1 += w * v[i] * g.point(i);
  }
  const double mean = m1 / m0;
  // Central second moment avoids the <x^2> - <x>^2 cancellation far from the origin.
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double dx = g.point(i) - mean;
    m2 += w * v[i] * dx * dx;
  }
  double variance = m2 / m0;
  if (!std::isfinite(mean) || !std::isfinite(variance)) {
    throw NumericError("moments: non-finite result (empty density?)");
  }
  if (variance < 0.0) {
    if (variance < -kVarianceClamp) {
      throw NumericError("moments: negative variance " + std::to_string(variance));
    }
    variance = 0.0;
  }
  return {mean, variance};
}

Complex autocorrelation(const WaveFunction& wf_t, const WaveFunction& wf_0) {
  if (wf_t.representation() != wf_0.representation()) {
    throw DimensionError("autocorrelation: states are in different representations");
  }
  if (!wf_t.grid().matches(wf_0.grid())) {
    throw DimensionError("autocorrelation: states live on different grids");
  }
  const auto a = wf_t.amplitudes();
  const auto b = wf_0.amplitudes();
  std::vector<Complex> product(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) product[i] = std::conj(a[i]) * b[i];
  return numerics::integrate(product, wf_t.grid());
}

double uncertainty_product(const Density& position, const Density& momentum) {
  return std::sqrt(moments(position).variance) * std::sqrt(moments(momentum).variance);
}

}  // namespace qrev
