#include "qrev/systems/propagator.hpp"

#include <cmath>
#include <string>

#include "qrev/errors.hpp"
#include "qrev/numerics/fourier.hpp"

namespace qrev::systems {

namespace {

class OscillatorPropagator final : public Propagator {
 public:
  OscillatorPropagator(OscillatorSystem sys, GaussianPacket packet)
      : sys_(sys), packet_(packet), grid_(sho_grid(sys, packet)) {}

  PhaseSpaceState evolve(double t) const override {
    WaveFunction x = sho_evolve(sys_, packet_, t, grid_);
    WaveFunction p = numerics::to_momentum(x, sys_.hbar);
    return {std::move(x), std::move(p)};
  }
  double hbar() const override { return sys_.hbar; }
  Timescales timescales() const override { return systems::timescales(sys_, packet_); }
  std::string_view system_name() const override { return "sho"; }

 private:
  OscillatorSystem sys_;
  GaussianPacket packet_;
  UniformGrid grid_;
};

class WellPropagator final : public Propagator {
 public:
  WellPropagator(WellSystem sys, GaussianPacket packet, const PropagatorOptions& options)
      : sys_(sys),
        packet_(packet),
        expansion_(well_coefficients(sys, packet, options.well_margin_sigmas)),
        position_(sys, well_position_grid(sys), Representation::position),
        momentum_(sys,
                  well_momentum_grid(sys, options.well_momentum_extent,
                                     options.well_momentum_per_level),
                  Representation::momentum) {}

  PhaseSpaceState evolve(double t) const override {
    const auto c = expansion_.at_time(t);
    WaveFunction x = position_.superpose(c);
    WaveFunction p = momentum_.superpose(c);
    const double nx = x.norm();
    if (std::abs(nx - 1.0) > 1e-6) {
      throw GridError("well: position norm " + std::to_string(nx) + " at t = " + std::to_string(t));
    }
    const double np = p.norm();
    if (std::abs(np - 1.0) > 1e-5) {
      throw GridError("well: momentum norm " + std::to_string(np) + " at t = " +
                      std::to_string(t) + "; widen the momentum extent");
    }
    return {std::move(x), std::move(p)};
  }
  double hbar() const override { return sys_.hbar; }
  Timescales timescales() const override { return systems::timescales(sys_, packet_); }
  std::string_view system_name() const override { return "well"; }

 private:
  WellSystem sys_;
  GaussianPacket packet_;
  EigenExpansion expansion_;
  WellBasis position_;
  WellBasis momentum_;
};

class BouncerPropagator final : public Propagator {
 public:
  BouncerPropagator(BouncerSystem sys, GaussianPacket packet, const PropagatorOptions& options)
      : sys_(std::move(sys)),
        packet_(packet),
        expansion_(bouncer_coefficients(sys_, packet)),
        basis_(sys_, expansion_, bouncer_position_grid(sys_, packet, options.bouncer_step),
               bouncer_required_extent(sys_, packet)) {}

  PhaseSpaceState evolve(double t) const override {
    WaveFunction x = basis_.position(expansion_.at_time(t));
    const double nx = x.norm();
    if (std::abs(nx - 1.0) > 1e-3) {
      throw GridError("bouncer: position norm " + std::to_string(nx) + " at t = " +
                      std::to_string(t));
    }
    WaveFunction p = numerics::to_momentum(x, 1.0, kBouncerPadding);
    return {std::move(x), std::move(p)};
  }
  double hbar() const override { return 1.0; }
  Timescales timescales() const override { return systems::timescales(sys_, packet_); }
  std::string_view system_name() const override { return "bouncer"; }

 private:
  BouncerSystem sys_;
  GaussianPacket packet_;
  EigenExpansion expansion_;
  BouncerBasis basis_;
};

}  // namespace

std::unique_ptr<Propagator> make_propagator(const SystemSpec& system, const GaussianPacket& packet,
                                            const PropagatorOptions& options) {
  packet.validate();
  return std::visit(
      [&](const auto& sys) -> std::unique_ptr<Propagator> {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, OscillatorSystem>) {
          return std::make_unique<OscillatorPropagator>(sys, packet);
        } else if constexpr (std::is_same_v<T, WellSystem>) {
          return std::make_unique<WellPropagator>(sys, packet, options);
        } else {
          return std::make_unique<BouncerPropagator>(sys, packet, options);
        }
      },
      system);
}

}  // namespace qrev::systems
