#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qrev/entropy.hpp"
#include "qrev/systems/propagator.hpp"

namespace qrev::revivals {

/// Diagnostics of one run, one entry per time sample.
struct DiagnosticSeries {
  std::vector<double> times;
  std::vector<double> autocorr_sq;
  std::vector<double> uncertainty_product;
  std::vector<ConjugatePair> pairs;
  std::vector<std::vector<double>> entropy_sums;  // [pair][sample]
  // Filled only when components are requested: R_rho^(alpha) and R_gamma^(beta) per pair.
  std::vector<std::vector<double>> position_renyi;
  std::vector<std::vector<double>> momentum_renyi;

  std::size_t size() const noexcept { return times.size(); }
  /// Throws DimensionError if a column's length differs from `times`, ContractError if
  /// the times are not strictly increasing.
  void validate() const;
};

struct DiagnosticOptions {
  bool components = false;
  unsigned threads = 0;  // 0: one per hardware thread
};

/// `count` equally spaced samples on [start, end].
std::vector<double> sample_times(double start, double end, std::size_t count);

/// Evolves the packet to every time and evaluates |A(t)|^2 against the t = 0 state,
/// Delta x Delta p and the entropy sums. Throws ContractError when the spacing exceeds
/// T_cl / 8 or the times are not strictly increasing; a failing sample aborts with
/// NumericError naming its time.
DiagnosticSeries run_diagnostics(const systems::Propagator& propagator, std::span<const double> times,
                                 std::span<const ConjugatePair> pairs,
                                 const DiagnosticOptions& options = {});

}  // namespace qrev::revivals
