#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrev/cli/config.hpp"
#include "qrev/revivals/diagnostics.hpp"
#include "qrev/revivals/report.hpp"

namespace qrev::cli {

/// Column-major numeric table with a header; the first column is always "t".
struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // [column][row]

  std::size_t rows() const noexcept { return data.empty() ? 0 : data.front().size(); }
  /// Throws SchemaError for a missing column.
  const std::vector<double>& column(const std::string& name) const;
};

/// esum_<alpha>_<beta> for one pair; rpos_<alpha> / rmom_<beta> for its components.
std::string entropy_column(const ConjugatePair& pair);
std::string position_column(RenyiOrder order);
std::string momentum_column(RenyiOrder order);

/// t, autocorr_sq, dxdp, esum_* (and rpos_* / rmom_* with components, deduplicated).
SeriesTable to_table(const revivals::DiagnosticSeries& series);

/// Header plus rows, every value printed with 12 significant digits.
std::string format_csv(const SeriesTable& table);
/// Throws SchemaError on ragged rows, unreadable numbers or an empty body.
SeriesTable parse_csv(const std::string& text);

/// Run metadata written next to the CSV.
nlohmann::ordered_json make_meta(const RunConfig& config, const ResolvedRun& run,
                                 const SeriesTable& table, const std::string& series_file);

/// What analyze needs from the metadata.
struct SeriesMeta {
  std::string system;
  double hbar;
  systems::Timescales timescales;
  std::vector<std::string> columns;
  std::size_t rows;
  revivals::DetectionSettings detection;
};

/// Throws SchemaError when a required field is missing or has the wrong type.
SeriesMeta parse_meta(const nlohmann::json& doc);

nlohmann::ordered_json report_json(const std::vector<revivals::RevivalReport>& reports,
                                   const SeriesMeta& meta, const std::string& series_file);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// %.12g
std::string format_number(double value);

}  // namespace qrev::cli
