#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qrev::revivals {

struct Extremum {
  std::size_t index;
  double time;
  double value;
  double prominence;
};

struct Extrema {
  std::vector<Extremum> minima;
  std::vector<Extremum> maxima;
};

/// Interior local extrema. Index i is a minimum when it is the strict least value within
/// +-window samples (clipped at the ends) and its depth below the lesser of the two
/// neighbouring reference maxima exceeds `prominence`. The reference on each side is the
/// largest value before the series first drops below s[i] on that side. Maxima mirror this.
/// Throws ContractError for window < 1, prominence < 0, a length mismatch, or a series
/// shorter than 2 window + 1.
Extrema detect_extrema(std::span<const double> series, std::span<const double> times,
                       std::size_t window, double prominence);

/// max(3, floor(samples_per_period / 4)).
std::size_t default_window(double samples_per_period);
/// 2% of max - min.
double default_prominence(std::span<const double> series);

struct Fraction {
  long p;
  long q;
  double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
};

struct Classification {
  std::optional<Fraction> fraction;  // empty when the nearest fraction is beyond tolerance
  Fraction nearest;
  double residual;  // |t - (p/q) T_rev| for the nearest fraction
};

/// Nearest p/q with q <= q_max to each t / T_rev; equal residuals go to the smaller q, so
/// the result is always in lowest terms. Throws ContractError unless t_rev > 0 and q_max >= 2.
std::vector<Classification> classify_fractions(std::span<const double> times, double t_rev,
                                               long q_max, double tolerance);

/// Indices of the samples nearest to times[0] + k * period, k = 0, 1, ...
/// Throws ContractError if period <= 0 or the sampling is coarser than the period.
std::vector<std::size_t> stroboscopic_indices(std::span<const double> times, double period);

/// Time of the first detected maximum of an entropy-sum series (default window and
/// prominence). With a classical period the series is first reduced to its stroboscopic
/// samples at integer periods, which removes the bouncing motion of the packet and leaves
/// the slow envelope. Throws DetectionError when no maximum is found.
double collapse_estimate(std::span<const double> series, std::span<const double> times,
                         std::optional<double> classical_period = std::nullopt);

}  // namespace qrev::revivals
