#pragma once

#include <cstddef>
#include <vector>

#include "qrev/wave_function.hpp"

namespace qrev::systems {

enum class Basis { well, bouncer };

/// psi(x, t) = sum_n a_n u_n(x) exp(-i E_n t / hbar) over consecutive levels
/// n = first_level, first_level + 1, ...
struct EigenExpansion {
  Basis basis;
  std::size_t first_level;
  std::vector<Complex> coefficients;
  std::vector<double> energies;
  double hbar = 1.0;

  std::size_t size() const noexcept { return coefficients.size(); }
  std::size_t last_level() const noexcept { return first_level + coefficients.size() - 1; }
  /// sum |a_n|^2
  double completeness() const;
  /// Coefficients advanced to time t: a_n exp(-i E_n t / hbar).
  std::vector<Complex> at_time(double t) const;
  /// Level with the largest |a_n|.
  std::size_t peak_level() const;
};

}  // namespace qrev::systems
