#include "qrev/revivals/detection.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::revivals {

namespace {

// Walks away from i in direction `step` until the series crosses s[i] (drops below it for a
// minimum, rises above it for a maximum) and returns the most extreme value on the way
// (the highest for a minimum, the lowest for a maximum).
double side_reference(std::span<const double> s, std::size_t i, std::ptrdiff_t step, bool minimum) {
  const double level = s[i];
  double ref = level;
  for (auto j = static_cast<std::ptrdiff_t>(i) + step;
       j >= 0 && j < static_cast<std::ptrdiff_t>(s.size()); j += step) {
    const double v = s[static_cast<std::size_t>(j)];
    if (minimum ? v < level : v > level) break;
    ref = minimum ? std::max(ref, v) : std::min(ref, v);
  }
  return ref;
}

}  // namespace

Extrema detect_extrema(std::span<const double> series, std::span<const double> times,
                       std::size_t window, double prominence) {
  if (window < 1) throw ContractError("detect_extrema: window must be >= 1");
  if (!(prominence >= 0.0)) throw ContractError("detect_extrema: prominence must be >= 0");
  if (series.size() != times.size()) {
    throw ContractError("detect_extrema: series and times differ in length");
  }
  const std::size_t n = series.size();
  if (n < 2 * window + 1) {
    throw ContractError("detect_extrema: series of " + std::to_string(n) +
                        " samples is shorter than 2 * window + 1 = " +
                        std::to_string(2 * window + 1));
  }

  Extrema out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(n - 1, i + window);
    bool lowest = true, highest = true;
    for (std::size_t j = lo; j <= hi && (lowest || highest); ++j) {
      if (j == i) continue;
      if (series[j] <= series[i]) lowest = false;
      if (series[j] >= series[i]) highest = false;
    }
    if (lowest) {
      const double ref = std::min(side_reference(series, i, -1, true),
                                  side_reference(series, i, +1, true));
      const double depth = ref - series[i];
      if (depth > prominence) out.minima.push_back({i, times[i], series[i], depth});
    } else if (highest) {
      const double ref = std::max(side_reference(series, i, -1, false),
                                  side_reference(series, i, +1, false));
      const double height = series[i] - ref;
      if (height > prominence) out.maxima.push_back({i, times[i], series[i], height});
    }
  }
  return out;
}

std::size_t default_window(double samples_per_period) {
  const double quarter = std::floor(samples_per_period / 4.0);
  return quarter > 3.0 ? static_cast<std::size_t>(quarter) : 3;
}

double default_prominence(std::span<const double> series) {
  if (series.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  return 0.02 * (*hi - *lo);
}

std::vector<Classification> classify_fractions(std::span<const double> times, double t_rev,
                                               long q_max, double tolerance) {
  if (!(t_rev > 0.0)) throw ContractError("classify_fractions: T_rev must be positive");
  if (q_max < 2) throw ContractError("classify_fractions: q_max must be >= 2");

  std::vector<Classification> out;
  out.reserve(times.size());
  for (const double t : times) {
    const double x = t / t_rev;
    Fraction best{0, 1};
    double best_residual = std::numeric_limits<double>::infinity();
    for (long q = 1; q <= q_max; ++q) {
      const double scaled = x * static_cast<double>(q);
      for (const double p : {std::floor(scaled), std::ceil(scaled)}) {
        const double residual = std::abs(t - p / static_cast<double>(q) * t_rev);
        if (residual < best_residual - 1e-12 * t_rev) {
          best = {static_cast<long>(p), q};
          best_residual = residual;
        }
      }
    }
    Classification c{std::nullopt, best, best_residual};
    if (best_residual <= tolerance) c.fraction = best;
    out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> stroboscopic_indices(std::span<const double> times, double period) {
  if (!(period > 0.0)) throw ContractError("stroboscopic_indices: period must be positive");
  std::vector<std::size_t> out;
  if (times.empty()) return out;
  const auto steps = static_cast<double>(times.size() - 1);
  if (times.size() > 1 && (times.back() - times.front()) / steps > period) {
    throw ContractError("stroboscopic_indices: sampling is coarser than the period");
  }
  const double start = times.front();
  const double tail = times.size() > 1 ? 0.5 * (times.back() - times[times.size() - 2]) : 0.0;
  for (std::size_t k = 0;; ++k) {
    const double target = start + static_cast<double>(k) * period;
    if (target > times.back() + tail) break;
    const auto it = std::lower_bound(times.begin(), times.end(), target);
    auto idx = static_cast<std::size_t>(it - times.begin());
    if (idx == times.size() || (idx > 0 && target - times[idx - 1] < times[idx] - target)) --idx;
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

double collapse_estimate(std::span<const double> series, std::span<const double> times,
                         std::optional<double> classical_period) {
  if (series.size() != times.size()) {
    throw ContractError("collapse_estimate: series and times differ in length");
  }
  std::vector<double> values, stamps;
  if (classical_period) {
    for (const std::size_t i : stroboscopic_indices(times, *classical_period)) {
      values.push_back(series[i]);
      stamps.push_back(times[i]);
    }
  } else {
    values.assign(series.begin(), series.end());
    stamps.assign(times.begin(), times.end());
  }
  const std::size_t window = default_window(1.0);
  if (values.size() < 2 * window + 1) {
    throw DetectionError("collapse_estimate: only " + std::to_string(values.size()) +
                         " samples to search");
  }
  const Extrema found = detect_extrema(values, stamps, window, default_prominence(values));
  if (found.maxima.empty()) throw DetectionError("collapse_estimate: no maximum detected");
  return found.maxima.front().time;
}

}  // namespace qrev::revivals
