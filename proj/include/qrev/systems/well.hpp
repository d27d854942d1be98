#pragma once

#include <cstddef>
#include <vector>

#include "qrev/systems/expansion.hpp"
#include "qrev/systems/packet.hpp"

namespace qrev::systems {

/// Infinite square well on (0, L) truncated to levels [n_min, n_max].
struct WellSystem {
  double mass = 0.5;
  double length = 1.0;
  double hbar = 1.0;
  std::size_t n_min = 1;
  std::size_t n_max = 1;

  void validate() const;
  /// E_n = n^2 hbar^2 pi^2 / (2 m L^2)
  double energy(std::size_t n) const;
  /// p_n = n pi hbar / L
  double level_momentum(std::size_t n) const;
  /// u_n(x) = sqrt(2/L) sin(n pi x / L) inside the well, 0 outside.
  double eigenfunction(std::size_t n, double x) const;
  /// Fourier transform of u_n (symmetric (2 pi hbar)^(-1/2) convention, kernel exp(-i p x / hbar)):
  ///   sqrt(hbar/(pi L)) p_n / (p^2 - p_n^2) [(-1)^n exp(-i p L / hbar) - 1],
  /// replaced by its first-order expansion within 1e-6 p_n of the removable poles p = +-p_n.
  Complex momentum_eigenfunction(std::size_t n, double p) const;
};

/// Closed-form Gaussian overlaps a_n = <u_n | psi_0> over [n_min, n_max]; the integral is
/// extended to the whole line, which is accurate when x0 +- margin_sigmas * sigma lies
/// inside the well. Throws ContractError if it does not, TruncationError when
/// |sum |a_n|^2 - 1| > 1e-6 (widen the level range).
EigenExpansion well_coefficients(const WellSystem& sys, const GaussianPacket& packet,
                                 double margin_sigmas = 5.0);

/// Level range [n0 - 100, n0 + 100] (clipped at 1) about n0 = round(|p0| L / (pi hbar)).
WellSystem well_system_for(const GaussianPacket& packet, double mass = 0.5, double length = 1.0,
                           double hbar = 1.0, std::size_t half_width = 100);

/// Position grid on [0, L] with spacing L / (8 n_max).
UniformGrid well_position_grid(const WellSystem& sys);
/// Symmetric momentum grid covering +-(n_max + 20) pi hbar / L * extent with `per_level`
/// samples per level spacing pi hbar / L. The momentum density falls off only as p^-4
/// (the walls put kinks in psi), so extent 1 can leave ~1e-3 of the norm outside while a
/// packet touches a wall; the default of 12 keeps that below 1e-6 for the bundled presets.
UniformGrid well_momentum_grid(const WellSystem& sys, double extent = 12.0, std::size_t per_level = 8);

/// Eigenbasis sampled once on a grid so that repeated evolution is a matrix-vector product.
class WellBasis {
 public:
  /// Throws GridError when the grid does not resolve the basis: position grids need
  /// dx <= L/(8 n_max) and must cover [0, L]; momentum grids must cover
  /// +-(n_max + 20) pi hbar / L and may not put one sample inside two pole windows.
  WellBasis(const WellSystem& sys, const UniformGrid& grid, Representation representation);

  const UniformGrid& grid() const noexcept { return grid_; }
  Representation representation() const noexcept { return representation_; }

  /// sum_n c_n u_n on the grid; `coefficients` indexed from n_min.
  WaveFunction superpose(std::span<const Complex> coefficients) const;

 private:
  WellSystem sys_;
  UniformGrid grid_;
  Representation representation_;
  std::size_t levels_;
  std::vector<double> real_table_;  // position: [point][level]

  // Momentum samples with |p| < 2 p_{n_max} use the tabulated eigenfunctions (split into
  // real and imaginary parts, [point][level]). Farther out each level expands as
  //   p_n / (p^2 - p_n^2) = sum_j p_n^(2j+1) / p^(2j+2),
  // so the whole superposition needs only a handful of per-time moments.
  std::vector<std::size_t> core_points_;
  std::vector<double> core_re_;
  std::vector<double> core_im_;
  std::vector<std::size_t> tail_points_;
  std::vector<double> tail_ratio_;   // p_{n_max} / p
  std::vector<Complex> tail_phase_;  // exp(-i p L / hbar)
  std::vector<double> level_scale_;  // p_n / p_{n_max}
  std::size_t tail_terms_ = 0;
};

/// Evolved state in either representation. Throws GridError if the result's norm is off
/// by more than `norm_tolerance` (1e-6 by default).
WaveFunction well_evolve(const WellSystem& sys, const EigenExpansion& expansion, double t,
                         const UniformGrid& grid, Representation representation,
                         double norm_tolerance = 1e-6);

}  // namespace qrev::systems
