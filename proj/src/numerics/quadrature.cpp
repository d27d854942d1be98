#include "qrev/numerics/quadrature.hpp"

#include <cmath>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::numerics {

namespace {

void check_length(std::size_t n, const UniformGrid& grid) {
  if (n != grid.count()) {
    throw DimensionError("integrate: " + std::to_string(n) + " samples on a grid of " +
                         std::to_string(grid.count()) + " points");
  }
}

bool finite(double v) { return std::isfinite(v); }
bool finite(std::complex<double> v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <typename T>
T trapezoid(std::span<const T> samples, const UniformGrid& grid) {
  check_length(samples.size(), grid);
  T interior{};
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    if (!finite(samples[i])) {
      throw NumericError("integrate: non-finite sample at index " + std::to_string(i));
    }
    interior += samples[i];
  }
  const T& first = samples.front();
  const T& last = samples.back();
  if (!finite(first) || !finite(last)) {
    throw NumericError("integrate: non-finite end-point sample");
  }
  return grid.step() * (interior + 0.5 * (first + last));
}

}  // namespace

double integrate(std::span<const double> samples, const UniformGrid& grid) {
  return trapezoid(samples, grid);
}

std::complex<double> integrate(std::span<const std::complex<double>> samples,
                               const UniformGrid& grid) {
  return trapezoid(samples, grid);
}

}  // namespace qrev::numerics
