#include "qrev/systems/oscillator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::systems {

namespace {
constexpr double kCoverageSigmas = 12.0;
constexpr double kRenormTolerance = 1e-3;
}  // namespace

void OscillatorSystem::validate() const {
  if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
    throw ContractError("OscillatorSystem: mass, omega and hbar must be positive");
  }
}

double OscillatorSystem::coherent_sigma() const { return std::sqrt(hbar / (mass * omega)); }

Complex sho_width(const OscillatorSystem& sys, const GaussianPacket& packet, double t) {
  const double wt = sys.omega * t;
  return {packet.sigma * std::cos(wt), sys.hbar / (sys.mass * sys.omega * packet.sigma) * std::sin(wt)};
}

WaveFunction sho_evolve(const OscillatorSystem& sys, const GaussianPacket& packet, double t,
                        const UniformGrid& grid) {
  sys.validate();
  packet.validate();
  const double m = sys.mass, w = sys.omega, hb = sys.hbar;
  const double s = packet.sigma, x0 = packet.x0, p0 = packet.p0;
  const double c = std::cos(w * t), sn = std::sin(w * t);
  const Complex i{0.0, 1.0};

  const Complex width = sho_width(sys, packet, t);
  const Complex s_const = -x0 * x0 * c - 2.0 * x0 * p0 * sn / (m * w) -
                          i * s * s * p0 * p0 * sn / (m * w * hb);
  const Complex s_lin = 2.0 * (x0 + i * s * s * p0 / hb);
  const Complex s_quad = -(c + i * m * w * s * s * sn / hb);
  const Complex denom = 2.0 * s * width;
  // (sigma / L)^(1/2) with arg L followed continuously through the half periods.
  const double turns = std::round(w * t / std::numbers::pi);
  const double arg = std::atan(hb / (m * w * s * s) * std::tan(w * t - turns * std::numbers::pi)) +
                     turns * std::numbers::pi;
  const Complex prefactor =
      std::polar(1.0 / std::sqrt(std::abs(width) * std::sqrt(std::numbers::pi)), -arg / 2.0);

  std::vector<Complex> amps(grid.count());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double x = grid.point(k);
    amps[k] = prefactor * std::exp((s_const + s_lin * x + s_quad * x * x) / denom);
  }
  WaveFunction wf(grid, std::move(amps), Representation::position);
  const double n = wf.norm();
  if (std::abs(n - 1.0) > kRenormTolerance) {
    throw GridError("sho_evolve: grid holds norm " + std::to_string(n) + " at t = " +
                    std::to_string(t) + "; widen the grid");
  }
  return wf.normalized();
}

Uncertainties sho_uncertainties(const OscillatorSystem& sys, const GaussianPacket& packet, double t) {
  const double wt = sys.omega * t;
  const double c = std::cos(wt), s = std::sin(wt);
  const double a = sys.hbar / packet.sigma;
  const double b = sys.mass * sys.omega * packet.sigma;
  return {std::abs(sho_width(sys, packet, t)) / std::numbers::sqrt2,
          std::sqrt((a * a * c * c + b * b * s * s) / 2.0)};
}

double sho_renyi_analytic(const OscillatorSystem& sys, const GaussianPacket& packet,
                          RenyiOrder order, double t, Space space) {
  if (order.is_shannon() || order.is_infinite()) {
    throw ContractError("sho_renyi_analytic: orders 1 and infinity are limits, not closed forms");
  }
  const double a = order.value();
  const double lw = std::abs(sho_width(sys, packet, t));
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double shape = -std::log(std::sqrt(a)) / (1.0 - a);
  if (space == Space::position) return std::log(sqrt_pi * lw) + shape;
  return std::log(sqrt_pi * sys.hbar / lw) + shape;
}

PhasePoint sho_classical_centre(const OscillatorSystem& sys, const GaussianPacket& packet, double t) {
  const double wt = sys.omega * t;
  const double mw = sys.mass * sys.omega;
  return {packet.x0 * std::cos(wt) + packet.p0 / mw * std::sin(wt),
          -mw * packet.x0 * std::sin(wt) + packet.p0 * std::cos(wt)};
}

UniformGrid sho_grid(const OscillatorSystem& sys, const GaussianPacket& packet) {
  sys.validate();
  packet.validate();
  const double mw = sys.mass * sys.omega;
  const double amp_x = std::hypot(packet.x0, packet.p0 / mw);
  const double amp_p = std::hypot(mw * packet.x0, packet.p0);
  const double dx_max = std::max(packet.sigma, sys.hbar / (mw * packet.sigma)) / std::numbers::sqrt2;
  const double dp_max = std::max(sys.hbar / packet.sigma, mw * packet.sigma) / std::numbers::sqrt2;

  const double half_x = amp_x + kCoverageSigmas * dx_max;
  const double half_p = amp_p + kCoverageSigmas * dp_max;
  // FFT momentum grid spans +-pi hbar / dx
  const double dx_needed = std::numbers::pi * sys.hbar / half_p;
  const auto wanted = static_cast<std::size_t>(std::ceil(2.0 * half_x / dx_needed));
  const std::size_t count = std::max<std::size_t>(1024, std::bit_ceil(wanted));
  return UniformGrid(-half_x, 2.0 * half_x / static_cast<double>(count), count);
}

}  // namespace qrev::systems
