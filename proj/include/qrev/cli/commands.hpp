#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qrev/cli/config.hpp"
#include "qrev/cli/io.hpp"

namespace qrev::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // I/O and anything unexpected
  kConfigError = 2,
  kNumericError = 3,
  kSchemaError = 4,
};

struct SimulateResult {
  std::string series_path;
  std::string meta_path;
  std::size_t rows = 0;
};

/// Runs the diagnostics and writes `<prefix>_series.csv` and `<prefix>_meta.json`.
/// Throws ConfigError for invalid configurations and NumericError for failing samples.
SimulateResult simulate(const RunConfig& config, const std::string& prefix);

struct AnalyzeRequest {
  std::string series_path;
  std::string meta_path;
  std::optional<std::string> out_prefix;  // default: series path without "_series.csv"
  // set fields win over the run's config
  std::optional<std::size_t> window;
  std::optional<double> prominence;
  std::optional<long> q_max;
  std::optional<double> tolerance;
};

struct AnalyzeResult {
  std::string report_path;
  SeriesMeta meta;
  std::vector<revivals::RevivalReport> reports;
};

/// Schema-checks the inputs (SchemaError), analyzes every column except t and writes
/// `<prefix>_report.json`.
AnalyzeResult analyze(const AnalyzeRequest& request);

/// Human-readable table of the reports, one line per column.
std::string summary_table(const AnalyzeResult& result);

}  // namespace qrev::cli
