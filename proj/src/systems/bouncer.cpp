#include "qrev/systems/bouncer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qrev/errors.hpp"
#include "qrev/numerics/fourier.hpp"

namespace qrev::systems {

namespace {

constexpr double kMaxStep = 0.05;
constexpr double kNormDrift = 1e-3;
constexpr double kCompletenessFloor = 1e-3;

}  // namespace

BouncerSystem BouncerSystem::make(std::size_t n_max) {
  BouncerSystem sys;
  sys.n_max = n_max;
  sys.airy = std::make_shared<const numerics::AiryTable>(numerics::AiryTable::compute(n_max));
  return sys;
}

void BouncerSystem::validate() const {
  if (n_max < 1) throw ContractError("BouncerSystem: n_max must be >= 1");
  if (!airy || airy->size() < n_max) {
    throw ContractError("BouncerSystem: Airy table shorter than n_max");
  }
}

double BouncerSystem::eigenfunction(std::size_t n, double z) const {
  if (z < 0.0) return 0.0;
  const double arg = z - airy->zero(n);
  if (arg > numerics::kAiryMaxArgument) return 0.0;
  return airy->normalization(n) * numerics::airy_ai(arg);
}

EigenExpansion bouncer_coefficients(const BouncerSystem& sys, const GaussianPacket& packet) {
  sys.validate();
  packet.validate();
  if (packet.p0 != 0.0) throw ContractError("bouncer_coefficients: requires p0 = 0");
  const double z0 = packet.x0, s = packet.sigma;
  if (!(z0 > 0.0) || z0 < 5.0 * s) {
    throw ContractError("bouncer_coefficients: need z0 > 0 and z0 >= 5 sigma");
  }
  const double s2 = s * s, s4 = s2 * s2;
  const double prefactor = std::sqrt(std::sqrt(4.0 * std::numbers::pi * s2));

  EigenExpansion out{Basis::bouncer, 1, {}, {}, 1.0};
  for (std::size_t n = 1; n <= sys.n_max; ++n) {
    const double shift = z0 - sys.airy->zero(n);
    const double ai_arg = shift + s4 / 4.0;
    double a = 0.0;
    if (ai_arg < numerics::kAiryMaxArgument) {
      a = sys.airy->normalization(n) * prefactor * numerics::airy_ai(ai_arg) *
          std::exp(0.5 * s2 * (shift + s4 / 6.0));
    }
    out.coefficients.emplace_back(a, 0.0);
    out.energies.push_back(sys.energy(n));
  }
  const double total = out.completeness();
  if (total < 1.0 - kCompletenessFloor) {
    throw TruncationError("bouncer_coefficients: sum |a_n|^2 = " + std::to_string(total) +
                              " with n_max = " + std::to_string(sys.n_max) + "; raise n_max",
                          total);
  }
  return out;
}

double bouncer_required_extent(const BouncerSystem& sys, const GaussianPacket& packet) {
  sys.validate();
  const double top = sys.airy->zero(sys.n_max);
  return packet.x0 + 8.0 * std::max(packet.sigma, top - packet.x0);
}

UniformGrid bouncer_position_grid(const BouncerSystem& sys, const GaussianPacket& packet,
                                  double step) {
  if (!(step > 0.0) || step > kMaxStep) {
    throw ContractError("bouncer_position_grid: step must lie in (0, 0.05]");
  }
  const double top = bouncer_required_extent(sys, packet);
  const auto intervals = static_cast<std::size_t>(std::ceil(top / step));
  return UniformGrid(0.0, step, intervals + 1);
}

BouncerBasis::BouncerBasis(const BouncerSystem& sys, const EigenExpansion& expansion,
                           const UniformGrid& grid, double required_extent)
    : grid_(grid) {
  sys.validate();
  if (expansion.basis != Basis::bouncer || expansion.first_level != 1 ||
      expansion.size() != sys.n_max) {
    throw DimensionError("BouncerBasis: expansion does not match the bouncer's levels");
  }
  if (grid.start() != 0.0) throw GridError("BouncerBasis: grid must start at the floor z = 0");
  if (grid.step() > kMaxStep * (1.0 + 1e-12)) {
    throw GridError("BouncerBasis: step " + std::to_string(grid.step()) + " exceeds 0.05");
  }
  if (grid.last() < required_extent * (1.0 - 1e-12)) {
    throw GridError("BouncerBasis: grid ends at " + std::to_string(grid.last()) +
                    ", needs z_max >= " + std::to_string(required_extent));
  }

  double largest = 0.0;
  for (const auto& a : expansion.coefficients) largest = std::max(largest, std::abs(a));
  for (std::size_t k = 0; k < expansion.size(); ++k) {
    if (std::abs(expansion.coefficients[k]) > 1e-15 * largest) kept_.push_back(k);
  }
  const std::size_t levels = kept_.size();
  table_.resize(grid.count() * levels);
  for (std::size_t j = 0; j < grid.count(); ++j) {
    for (std::size_t m = 0; m < levels; ++m) {
      table_[j * levels + m] = sys.eigenfunction(kept_[m] + 1, grid.point(j));
    }
  }
}

WaveFunction BouncerBasis::position(std::span<const Complex> coefficients) const {
  const std::size_t levels = kept_.size();
  std::vector<Complex> c(levels);
  for (std::size_t m = 0; m < levels; ++m) c[m] = coefficients[kept_[m]];
  std::vector<Complex> amps(grid_.count());
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const double* row = &table_[j * levels];
    double re = 0.0, im = 0.0;
    for (std::size_t m = 0; m < levels; ++m) {
      re += c[m].real() * row[m];
      im += c[m].imag() * row[m];
    }
    amps[j] = {re, im};
  }
  return WaveFunction(grid_, std::move(amps), Representation::position);
}

WaveFunction bouncer_evolve(const BouncerSystem& sys, const EigenExpansion& expansion, double t,
                            const UniformGrid& grid, Representation representation,
                            const GaussianPacket& packet) {
  const BouncerBasis basis(sys, expansion, grid, bouncer_required_extent(sys, packet));
  WaveFunction wf = basis.position(expansion.at_time(t));
  if (representation == Representation::momentum) {
    wf = numerics::to_momentum(wf, 1.0, kBouncerPadding);
  }
  const double n = wf.norm();
  if (std::abs(n - 1.0) > kNormDrift) {
    throw GridError("bouncer_evolve: norm " + std::to_string(n) + " at t = " + std::to_string(t));
  }
  return wf;
}

}  // namespace qrev::systems
