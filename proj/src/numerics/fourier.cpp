#include "qrev/numerics/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "qrev/errors.hpp"

namespace qrev::numerics {

namespace {

// Planner calls are not thread safe; execution on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(std::vector<Complex>& data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

Complex phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

UniformGrid momentum_grid_for(const UniformGrid& position, double hbar, std::size_t padded_count) {
  const double dp = 2.0 * std::numbers::pi * hbar / (static_cast<double>(padded_count) * position.step());
  const double start = -static_cast<double>(padded_count / 2) * dp;
  return UniformGrid(start, dp, padded_count);
}

WaveFunction to_momentum(const WaveFunction& wf, double hbar, std::size_t padding_factor) {
  if (wf.representation() != Representation::position) {
    throw ContractError("to_momentum: input must be in the position representation");
  }
  if (padding_factor == 0) throw ContractError("to_momentum: padding factor must be >= 1");

  const UniformGrid& xg = wf.grid();
  const std::size_t n = xg.count() * padding_factor;
  const UniformGrid pg = momentum_grid_for(xg, hbar, n);
  const double dx = xg.step();
  const double x0 = xg.start();
  const double p0 = pg.start();

  std::vector<Complex> data(n, Complex{});
  const auto amps = wf.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    data[k] = amps[k] * phase(-p0 * static_cast<double>(k) * dx / hbar);
  }
  run_fft(data, FFTW_FORWARD);

  const double scale = dx / std::sqrt(2.0 * std::numbers::pi * hbar);
  for (std::size_t j = 0; j < n; ++j) {
    data[j] *= scale * phase(-pg.point(j) * x0 / hbar);
  }
  return WaveFunction(pg, std::move(data), Representation::momentum);
}

WaveFunction to_position(const WaveFunction& momentum, double position_start, double hbar) {
  if (momentum.representation() != Representation::momentum) {
    throw ContractError("to_position: input must be in the momentum representation");
  }
  const UniformGrid& pg = momentum.grid();
  const std::size_t n = pg.count();
  const double dp = pg.step();
  const double dx = 2.0 * std::numbers::pi * hbar / (static_cast<double>(n) * dp);
  const UniformGrid xg(position_start, dx, n);
  const double p0 = pg.start();

  std::vector<Complex> data(momentum.amplitudes().begin(), momentum.amplitudes().end());
  for (std::size_t j = 0; j < n; ++j) {
    data[j] *= phase(static_cast<double>(j) * dp * position_start / hbar);
  }
  run_fft(data, FFTW_BACKWARD);

  const double scale = dp / std::sqrt(2.0 * std::numbers::pi * hbar);
  for (std::size_t k = 0; k < n; ++k) {
    data[k] *= scale * phase(p0 * xg.point(k) / hbar);
  }
  return WaveFunction(xg, std::move(data), Representation::position);
}

}  // namespace qrev::numerics
