#pragma once

#include <complex>

#include "qrev/wave_function.hpp"

namespace qrev::systems {

/// Initial Gaussian (squeezed) state
///   psi(x, 0) = (sigma sqrt(pi))^(-1/2) exp(i p0 x / hbar) exp(-(x - x0)^2 / (2 sigma^2)).
/// For the bouncer `x0` is the release height z0.
struct GaussianPacket {
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma = 1.0;

  /// Throws ContractError unless sigma > 0 and all fields are finite.
  void validate() const;
  Complex amplitude(double x, double hbar = 1.0) const;
};

/// The packet sampled on `grid` (position representation, not renormalized).
WaveFunction sample_packet(const GaussianPacket& packet, const UniformGrid& grid, double hbar = 1.0);

}  // namespace qrev::systems
