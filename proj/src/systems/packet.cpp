#include "qrev/systems/packet.hpp"

#include <cmath>
#include <numbers>

#include "qrev/errors.hpp"

namespace qrev::systems {

void GaussianPacket::validate() const {
  if (!std::isfinite(x0) || !std::isfinite(p0) || !std::isfinite(sigma)) {
    throw ContractError("GaussianPacket: parameters must be finite");
  }
  if (!(sigma > 0.0)) throw ContractError("GaussianPacket: sigma must be positive");
}

Complex GaussianPacket::amplitude(double x, double hbar) const {
  const double norm = 1.0 / std::sqrt(sigma * std::sqrt(std::numbers::pi));
  const double u = (x - x0) / sigma;
  return norm * std::exp(-0.5 * u * u) * std::polar(1.0, p0 * x / hbar);
}

WaveFunction sample_packet(const GaussianPacket& packet, const UniformGrid& grid, double hbar) {
  packet.validate();
  std::vector<Complex> amps(grid.count());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = packet.amplitude(grid.point(i), hbar);
  return WaveFunction(grid, std::move(amps), Representation::position);
}

}  // namespace qrev::systems
