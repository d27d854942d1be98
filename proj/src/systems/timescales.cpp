#include "qrev/systems/timescales.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qrev::systems {

using std::numbers::pi;

Timescales timescales(const OscillatorSystem& sys, const GaussianPacket&) {
  return {2.0 * pi / sys.omega, std::nullopt, std::nullopt, std::nullopt};
}

Timescales timescales(const WellSystem& sys, const GaussianPacket& packet) {
  const double m = sys.mass, len = sys.length, hb = sys.hbar;
  const double n0 = std::max(1.0, std::round(std::abs(packet.p0) * len / (pi * hb)));
  return {2.0 * m * len * len / (hb * pi * n0), 4.0 * m * len * len / (hb * pi),
          m * len * packet.sigma / (std::sqrt(6.0) * hb), n0};
}

Timescales timescales(const BouncerSystem&, const GaussianPacket& packet) {
  const double z0 = packet.x0;
  const double period = 2.0 * std::sqrt(z0);
  const double n0 = (8.0 * z0 * std::sqrt(z0) / (3.0 * pi) + 1.0) / 4.0;
  return {period, 4.0 * z0 * z0 / pi,
          period * period * period / (4.0 * std::numbers::sqrt2 * packet.sigma), n0};
}

}  // namespace qrev::systems
