#include "qrev/cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <map>

#include "qrev/errors.hpp"
#include "qrev/revivals/diagnostics.hpp"

namespace qrev::cli {

SimulateResult simulate(const RunConfig& config, const std::string& prefix) {
  const ResolvedRun run = resolve(config);
  std::unique_ptr<systems::Propagator> propagator;
  try {
    propagator = systems::make_propagator(run.system, run.packet, config.numerics);
  } catch (const ContractError& e) {
    throw ConfigError("", e.what());
  }
  revivals::DiagnosticOptions options;
  options.components = config.components;
  options.threads = config.threads;
  const auto series = revivals::run_diagnostics(*propagator, run.times, config.pairs, options);
  const SeriesTable table = to_table(series);

  SimulateResult result;
  result.series_path = prefix + "_series.csv";
  result.meta_path = prefix + "_meta.json";
  result.rows = table.rows();
  const std::string series_name = std::filesystem::path(result.series_path).filename().string();
  write_atomic(result.series_path, format_csv(table));
  write_atomic(result.meta_path, make_meta(config, run, table, series_name).dump(2) + "\n");
  return result;
}

namespace {

std::string default_prefix(const std::string& series_path) {
  const std::string suffix = "_series.csv";
  if (series_path.size() > suffix.size() &&
      series_path.compare(series_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return series_path.substr(0, series_path.size() - suffix.size());
  }
  return std::filesystem::path(series_path).replace_extension().string();
}

}  // namespace

AnalyzeResult analyze(const AnalyzeRequest& request) {
  nlohmann::json meta_doc;
  try {
    meta_doc = nlohmann::json::parse(read_file(request.meta_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(request.meta_path + ": malformed JSON (" + e.what() + ")");
  }
  AnalyzeResult result;
  result.meta = parse_meta(meta_doc);
  const SeriesTable table = parse_csv(read_file(request.series_path));

  if (table.columns != result.meta.columns) {
    std::string header;
    for (const auto& c : table.columns) header += (header.empty() ? "" : ",") + c;
    throw SchemaError(request.series_path + ": header \"" + header +
                      "\" does not match the columns listed in " + request.meta_path);
  }
  if (table.rows() != result.meta.rows) {
    throw SchemaError(request.series_path + ": " + std::to_string(table.rows()) + " rows, metadata says " +
                      std::to_string(result.meta.rows));
  }
  const auto& times = table.data.front();
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw SchemaError(request.series_path + ": t is not strictly increasing at row " +
                        std::to_string(i + 1));
    }
  }

  revivals::DetectionSettings settings = result.meta.detection;
  if (request.window) settings.window = request.window;
  if (request.prominence) settings.prominence = request.prominence;
  if (request.tolerance) settings.tolerance = request.tolerance;
  if (request.q_max) settings.q_max = *request.q_max;

  for (std::size_t k = 1; k < table.columns.size(); ++k) {
    const std::string& name = table.columns[k];
    const bool entropy = name.rfind("esum_", 0) == 0;
    try {
      result.reports.push_back(revivals::analyze_series(name, table.data[k], times,
                                                        result.meta.timescales, settings, entropy));
    } catch (const ContractError& e) {
      throw ConfigError("window", name + ": " + e.what());
    }
  }

  result.report_path = request.out_prefix.value_or(default_prefix(request.series_path)) + "_report.json";
  const std::string series_name = std::filesystem::path(request.series_path).filename().string();
  write_atomic(result.report_path, report_json(result.reports, result.meta, series_name).dump(2) + "\n");
  return result;
}

std::string summary_table(const AnalyzeResult& result) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %7s %10s %7s  %-14s %s\n", "column", "minima", "classified",
                "maxima", "collapse", "fractions");
  out += line;
  for (const auto& r : result.reports) {
    std::size_t classified = 0;
    std::map<double, std::string> fractions;
    for (const auto& m : r.minima) {
      if (!m.fraction) continue;
      ++classified;
      fractions.emplace(m.fraction->value(),
                        std::to_string(m.fraction->p) + "/" + std::to_string(m.fraction->q));
    }
    std::string listed;
    for (const auto& [value, text] : fractions) listed += (listed.empty() ? "" : " ") + text;
    const std::string collapse = r.collapse_estimate ? format_number(*r.collapse_estimate) : "-";
    std::snprintf(line, sizeof line, "%-20s %7zu %10zu %7zu  %-14s %s\n", r.column.c_str(),
                  r.minima.size(), classified, r.maxima.size(), collapse.c_str(), listed.c_str());
    out += line;
  }
  const auto& ts = result.meta.timescales;
  out += "T_cl = " + format_number(ts.classical_period);
  if (ts.revival) out += ", T_rev = " + format_number(*ts.revival);
  if (ts.collapse) out += ", T_coll = " + format_number(*ts.collapse);
  out += "\n";
  return out;
}

}  // namespace qrev::cli
