#pragma once

#include <cstddef>

#include "qrev/wave_function.hpp"

namespace qrev::numerics {

// Continuum transform convention
//   phi(p) = (2 pi hbar)^(-1/2) \int psi(x) exp(-i p x / hbar) dx,
// realized by an FFT over the (optionally zero-padded) position grid. With N the
// padded length the momentum grid has dp = 2 pi hbar / (N dx) and runs from
// -(N/2) dp, so the discrete pair is exactly unitary:
//   sum |phi|^2 dp == sum |psi|^2 dx.

/// Momentum grid produced by `to_momentum` for a position grid padded to `padded_count`.
UniformGrid momentum_grid_for(const UniformGrid& position, double hbar, std::size_t padded_count);

/// Position to momentum. The input is zero-padded to `padding_factor * count` samples.
/// Throws ContractError for a momentum-space input or a zero padding factor.
WaveFunction to_momentum(const WaveFunction& wf, double hbar = 1.0, std::size_t padding_factor = 1);

/// Inverse of `to_momentum`: returns the full (padded) position grid beginning at
/// `position_start`. Truncate to recover the unpadded samples.
WaveFunction to_position(const WaveFunction& momentum, double position_start, double hbar = 1.0);

}  // namespace qrev::numerics
