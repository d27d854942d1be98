#include "qrev/systems/expansion.hpp"

#include <cmath>
#include <numbers>

namespace qrev::systems {

double EigenExpansion::completeness() const {
  double s = 0.0;
  for (const auto& a : coefficients) s += std::norm(a);
  return s;
}

std::vector<Complex> EigenExpansion::at_time(double t) const {
  std::vector<Complex> out(coefficients.size());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < out.size(); ++k) {
    // Reduce the phase first: E_n t reaches ~1e6 rad for the well at T_rev.
    const double angle = std::fmod(energies[k] * t / hbar, two_pi);
    out[k] = coefficients[k] * std::polar(1.0, -angle);
  }
  return out;
}

std::size_t EigenExpansion::peak_level() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < coefficients.size(); ++k) {
    if (std::abs(coefficients[k]) > std::abs(coefficients[best])) best = k;
  }
  return first_level + best;
}

}  // namespace qrev::systems
