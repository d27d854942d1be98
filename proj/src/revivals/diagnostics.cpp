#include "qrev/revivals/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "qrev/errors.hpp"
#include "qrev/numerics/grid.hpp"

namespace qrev::revivals {

void DiagnosticSeries::validate() const {
  const std::size_t n = times.size();
  auto check = [n](const std::vector<double>& column, const char* name) {
    if (column.size() != n) {
      throw DimensionError(std::string("DiagnosticSeries: column ") + name + " has " +
                           std::to_string(column.size()) + " entries, expected " +
                           std::to_string(n));
    }
  };
  check(autocorr_sq, "autocorr_sq");
  check(uncertainty_product, "dxdp");
  if (entropy_sums.size() != pairs.size()) {
    throw DimensionError("DiagnosticSeries: one entropy-sum column per pair expected");
  }
  for (const auto& c : entropy_sums) check(c, "entropy sum");
  if (!position_renyi.empty() || !momentum_renyi.empty()) {
    if (position_renyi.size() != pairs.size() || momentum_renyi.size() != pairs.size()) {
      throw DimensionError("DiagnosticSeries: one component column per pair expected");
    }
    for (const auto& c : position_renyi) check(c, "position Renyi");
    for (const auto& c : momentum_renyi) check(c, "momentum Renyi");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ContractError("DiagnosticSeries: times must be strictly increasing");
    }
  }
}

std::vector<double> sample_times(double start, double end, std::size_t count) {
  if (count == 1) return {start};
  return numerics::UniformGrid::spanning(start, end, count).points();
}

namespace {

std::string time_text(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", t);
  return buf;
}

}  // namespace

DiagnosticSeries run_diagnostics(const systems::Propagator& propagator, std::span<const double> times,
                                 std::span<const ConjugatePair> pairs,
                                 const DiagnosticOptions& options) {
  const std::size_t n = times.size();
  if (n == 0) throw ContractError("run_diagnostics: empty time list");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ContractError("run_diagnostics: times must be strictly increasing");
    }
  }
  const double period = propagator.timescales().classical_period;
  for (std::size_t i = 1; i < n; ++i) {
    if (times[i] - times[i - 1] > period / 8.0 * (1.0 + 1e-9)) {
      throw ContractError("run_diagnostics: step " + time_text(times[i] - times[i - 1]) +
                          " at t = " + time_text(times[i]) + " exceeds T_cl / 8 = " +
                          time_text(period / 8.0));
    }
  }

  DiagnosticSeries out;
  out.times.assign(times.begin(), times.end());
  out.pairs.assign(pairs.begin(), pairs.end());
  out.autocorr_sq.resize(n);
  out.uncertainty_product.resize(n);
  out.entropy_sums.assign(pairs.size(), std::vector<double>(n));
  if (options.components) {
    out.position_renyi.assign(pairs.size(), std::vector<double>(n));
    out.momentum_renyi.assign(pairs.size(), std::vector<double>(n));
  }

  const WaveFunction reference = propagator.evolve(0.0).position;

  auto sample = [&](std::size_t i) {
    const double t = times[i];
    const auto state = propagator.evolve(t);
    const Density rho = density(state.position);
    const Density gamma = density(state.momentum);
    out.autocorr_sq[i] = std::norm(autocorrelation(state.position, reference));
    out.uncertainty_product[i] = uncertainty_product(rho, gamma);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double rx = renyi(rho, pairs[k].position_order());
      const double rp = renyi(gamma, pairs[k].momentum_order());
      out.entropy_sums[k][i] = rx + rp;
      if (options.components) {
        out.position_renyi[k][i] = rx;
        out.momentum_renyi[k][i] = rp;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, n));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = n;
  std::string error_message;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        sample(i);
      } catch (const std::exception& e) {
        const std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error_message = e.what();
        }
        failed = true;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failed) {
    throw NumericError("sample t = " + time_text(times[error_index]) + ": " + error_message);
  }
  return out;
}

}  // namespace qrev::revivals
