#pragma once

#include "qrev/entropy.hpp"
#include "qrev/systems/packet.hpp"

namespace qrev::systems {

/// V(x) = m omega^2 x^2 / 2.
struct OscillatorSystem {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  void validate() const;
  /// sigma_coh = sqrt(hbar / (m omega)); a packet of this width keeps its shape.
  double coherent_sigma() const;
};

/// Closed-form width function L(t) = sigma cos(wt) + i hbar/(m w sigma) sin(wt).
Complex sho_width(const OscillatorSystem& sys, const GaussianPacket& packet, double t);

/// Closed-form evolved squeezed state sampled on `grid` and renormalized there.
/// Throws GridError if the grid captures less than 1 - 1e-3 of the probability.
WaveFunction sho_evolve(const OscillatorSystem& sys, const GaussianPacket& packet, double t,
                        const UniformGrid& grid);

struct Uncertainties {
  double dx;
  double dp;
};

/// Delta x(t) = |L(t)|/sqrt(2),
/// Delta p(t) = sqrt(((hbar/sigma)^2 cos^2 wt + (m w sigma)^2 sin^2 wt) / 2).
Uncertainties sho_uncertainties(const OscillatorSystem& sys, const GaussianPacket& packet, double t);

enum class Space { position, momentum };

/// Literal closed forms
///   position: ln(sqrt(pi) |L|) - ln(sqrt(alpha)) / (1 - alpha)
///   momentum: ln(sqrt(pi) hbar / |L|) - ln(sqrt(alpha)) / (1 - alpha).
/// The momentum form assumes an unchirped momentum width, so it tracks the actual momentum
/// density only at t = k T_cl / 4. Orders 1 and infinity are rejected (ContractError).
double sho_renyi_analytic(const OscillatorSystem& sys, const GaussianPacket& packet,
                          RenyiOrder order, double t, Space space);

/// Classical centre of the packet: <x>_t and <p>_t.
struct PhasePoint {
  double x;
  double p;
};
PhasePoint sho_classical_centre(const OscillatorSystem& sys, const GaussianPacket& packet, double t);

/// FFT-friendly position grid covering the packet's whole orbit with a 12-sigma margin in
/// both position and (through the transform) momentum.
UniformGrid sho_grid(const OscillatorSystem& sys, const GaussianPacket& packet);

}  // namespace qrev::systems
