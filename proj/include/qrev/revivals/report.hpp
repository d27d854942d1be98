#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrev/revivals/detection.hpp"
#include "qrev/systems/timescales.hpp"

namespace qrev::revivals {

struct ReportMinimum {
  double time;
  double value;
  std::optional<Fraction> fraction;
  std::optional<double> residual;  // absent when the system has no revival time
};

struct ReportMaximum {
  double time;
  double value;
};

/// Detection knobs; unset entries take the defaults (window from T_cl, 2% prominence,
/// tolerance 0.01 T_rev).
struct DetectionSettings {
  std::optional<std::size_t> window;
  std::optional<double> prominence;
  long q_max = 10;
  std::optional<double> tolerance;
};

struct RevivalReport {
  std::string column;
  std::size_t window = 0;
  double prominence = 0.0;
  long q_max = 10;
  std::optional<double> tolerance;
  std::vector<ReportMinimum> minima;
  std::vector<ReportMaximum> maxima;
  bool collapse_expected = false;
  std::optional<double> collapse_estimate;
  std::string collapse_note;  // reason when collapse_estimate is absent
  systems::Timescales timescales{};
};

/// Series whose spread is below 1e-8 of its magnitude; treated as having no extrema.
bool is_flat(std::span<const double> series);

/// Extrema of one diagnostic column, minima classified against T_rev when there is one.
/// The collapse estimate is attempted for entropy-sum columns only.
RevivalReport analyze_series(std::string column, std::span<const double> values,
                             std::span<const double> times, const systems::Timescales& timescales,
                             const DetectionSettings& settings, bool entropy_column);

}  // namespace qrev::revivals
