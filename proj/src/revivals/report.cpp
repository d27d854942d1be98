#include "qrev/revivals/report.hpp"

#include <algorithm>
#include <cmath>

#include "qrev/errors.hpp"

namespace qrev::revivals {

bool is_flat(std::span<const double> series) {
  if (series.empty()) return true;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
  return *hi - *lo <= 1e-8 * scale;
}

RevivalReport analyze_series(std::string column, std::span<const double> values,
                             std::span<const double> times, const systems::Timescales& timescales,
                             const DetectionSettings& settings, bool entropy_column) {
  if (values.size() != times.size()) {
    throw DimensionError("analyze_series: " + column + " and t differ in length");
  }
  RevivalReport report;
  report.column = std::move(column);
  report.timescales = timescales;
  report.q_max = settings.q_max;
  report.collapse_expected = timescales.collapse.has_value();

  const double step = times.size() > 1
                          ? (times.back() - times.front()) / static_cast<double>(times.size() - 1)
                          : 0.0;
  report.window = settings.window.value_or(
      step > 0.0 ? default_window(timescales.classical_period / step) : default_window(0.0));
  report.prominence = settings.prominence.value_or(default_prominence(values));
  if (timescales.revival) {
    report.tolerance = settings.tolerance.value_or(0.01 * *timescales.revival);
  }

  if (!is_flat(values)) {
    const Extrema found = detect_extrema(values, times, report.window, report.prominence);
    std::vector<double> minimum_times;
    for (const auto& m : found.minima) minimum_times.push_back(m.time);
    std::vector<Classification> classes;
    if (timescales.revival) {
      classes = classify_fractions(minimum_times, *timescales.revival, report.q_max, *report.tolerance);
    }
    for (std::size_t k = 0; k < found.minima.size(); ++k) {
      ReportMinimum m{found.minima[k].time, found.minima[k].value, std::nullopt, std::nullopt};
      if (!classes.empty()) {
        m.fraction = classes[k].fraction;
        m.residual = classes[k].residual;
      }
      report.minima.push_back(m);
    }
    for (const auto& m : found.maxima) report.maxima.push_back({m.time, m.value});
  }

  if (!entropy_column) {
    report.collapse_note = "not an entropy-sum column";
  } else if (is_flat(values)) {
    report.collapse_note = "series is constant";
  } else {
    try {
      std::vector<std::size_t> strobe = stroboscopic_indices(times, timescales.classical_period);
      std::vector<double> envelope;
      for (const std::size_t i : strobe) envelope.push_back(values[i]);
      if (is_flat(envelope)) {
        report.collapse_note = "series repeats with the classical period";
      } else {
        report.collapse_estimate = collapse_estimate(values, times, timescales.classical_period);
      }
    } catch (const DetectionError& e) {
      report.collapse_note = e.what();
    }
  }
  return report;
}

}  // namespace qrev::revivals
