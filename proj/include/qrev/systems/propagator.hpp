#pragma once

#include <memory>
#include <string_view>
#include <variant>

#include "qrev/systems/timescales.hpp"

namespace qrev::systems {

using SystemSpec = std::variant<OscillatorSystem, WellSystem, BouncerSystem>;

/// The state at one instant in both representations, on grids fixed for the whole run.
struct PhaseSpaceState {
  WaveFunction position;
  WaveFunction momentum;
};

// Evolves one packet in one system. Implementations precompute whatever basis tables they
// need at construction and are immutable afterwards; `evolve` may be called concurrently.
class Propagator {
 public:
  virtual ~Propagator() = default;

  virtual PhaseSpaceState evolve(double t) const = 0;
  virtual double hbar() const = 0;
  virtual Timescales timescales() const = 0;
  virtual std::string_view system_name() const = 0;
};

struct PropagatorOptions {
  // well
  double well_momentum_extent = 12.0;
  std::size_t well_momentum_per_level = 8;
  double well_margin_sigmas = 5.0;
  // bouncer
  double bouncer_step = 0.05;
};

/// Builds the propagator for `system` and validates the packet against it.
std::unique_ptr<Propagator> make_propagator(const SystemSpec& system, const GaussianPacket& packet,
                                            const PropagatorOptions& options = {});

}  // namespace qrev::systems
