#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qrev/numerics/airy.hpp"
#include "qrev/systems/expansion.hpp"
#include "qrev/systems/packet.hpp"

namespace qrev::systems {

// Quantum bouncer in gravitational units: lengths in l_g = (hbar^2 / (2 g m^2))^(1/3) and
// energies in m g l_g, so H = -d^2/dz^2 + z on z > 0 with hbar = 1 and 2m = 1.
// Eigenpairs: E_n = z_n, u_n(z) = N_n Ai(z - z_n), N_n = |Ai'(-z_n)|^-1.
struct BouncerSystem {
  std::size_t n_max = 1;
  std::shared_ptr<const numerics::AiryTable> airy;

  /// Builds the Airy zero table for levels 1..n_max.
  static BouncerSystem make(std::size_t n_max);

  void validate() const;
  double energy(std::size_t n) const { return airy->zero(n); }
  double eigenfunction(std::size_t n, double z) const;
};

/// Exact overlaps of the Gaussian with the Airy eigenfunctions (integral extended below the
/// floor, negligible once z0 >= 5 sigma):
///   a_n = N_n (4 pi sigma^2)^(1/4) Ai(z0 - z_n + sigma^4/4) exp((sigma^2/2)(z0 - z_n + sigma^4/6)).
/// Requires p0 = 0, z0 > 0 and z0 >= 5 sigma (ContractError). Throws TruncationError when
/// sum |a_n|^2 < 1 - 1e-3.
EigenExpansion bouncer_coefficients(const BouncerSystem& sys, const GaussianPacket& packet);

/// Smallest grid top z_max = z0 + 8 max(sigma, z_{n_max} - z0).
double bouncer_required_extent(const BouncerSystem& sys, const GaussianPacket& packet);
/// Grid on [0, z_max] with step at most `step` (0.05 by default).
UniformGrid bouncer_position_grid(const BouncerSystem& sys, const GaussianPacket& packet,
                                  double step = 0.05);

inline constexpr std::size_t kBouncerPadding = 4;

/// Airy eigenbasis sampled on a position grid; momentum states come from the zero-padded FFT.
class BouncerBasis {
 public:
  /// Throws GridError unless the grid starts at 0, has dx <= 0.05 and reaches z_max.
  /// Levels whose coefficient is below 1e-15 of the largest are dropped from the table.
  BouncerBasis(const BouncerSystem& sys, const EigenExpansion& expansion, const UniformGrid& grid,
               double required_extent);

  const UniformGrid& grid() const noexcept { return grid_; }
  WaveFunction position(std::span<const Complex> coefficients) const;

 private:
  UniformGrid grid_;
  std::vector<std::size_t> kept_;  // indices into the expansion
  std::vector<double> table_;      // [point][kept level]
};

/// Evolved state. The momentum representation is `to_momentum` of the position state padded
/// by `kBouncerPadding`. Throws GridError when the norm drifts by more than 1e-3.
WaveFunction bouncer_evolve(const BouncerSystem& sys, const EigenExpansion& expansion, double t,
                            const UniformGrid& grid, Representation representation,
                            const GaussianPacket& packet);

}  // namespace qrev::systems
