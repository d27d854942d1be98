#pragma once

#include <optional>

#include "qrev/systems/bouncer.hpp"
#include "qrev/systems/oscillator.hpp"
#include "qrev/systems/well.hpp"

namespace qrev::systems {

struct Timescales {
  double classical_period;
  std::optional<double> revival;   // absent for the oscillator
  std::optional<double> collapse;  // absent for the oscillator
  std::optional<double> principal_level;  // n0 the packet is peaked around
};

/// T_cl = 2 pi / omega; no revival or collapse scale.
Timescales timescales(const OscillatorSystem& sys, const GaussianPacket& packet);
/// n0 = round(|p0| L / (pi hbar)) (at least 1), T_cl = 2 m L^2 / (hbar pi n0),
/// T_rev = 4 m L^2 / (hbar pi), T_coll = m L sigma / (sqrt(6) hbar).
Timescales timescales(const WellSystem& sys, const GaussianPacket& packet);
/// T_cl = 2 sqrt(z0), T_rev = 4 z0^2 / pi (the half-period-shifted reformation),
/// T_coll = T_cl^3 / (4 sqrt(2) sigma); n0 from inverting z_n ~ [3 pi (4n - 1) / 8]^(2/3).
Timescales timescales(const BouncerSystem& sys, const GaussianPacket& packet);

}  // namespace qrev::systems
