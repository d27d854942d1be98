#pragma once

#include <complex>
#include <span>

#include "qrev/numerics/grid.hpp"

namespace qrev::numerics {

// Composite trapezoid over [grid.start(), grid.last()].
// Throws DimensionError on a length mismatch and NumericError on non-finite samples.
double integrate(std::span<const double> samples, const UniformGrid& grid);
std::complex<double> integrate(std::span<const std::complex<double>> samples, const UniformGrid& grid);

}  // namespace qrev::numerics
