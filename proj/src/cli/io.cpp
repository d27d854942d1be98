#include "qrev/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace qrev::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

const std::vector<double>& SeriesTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return data[k];
  }
  throw SchemaError("series has no column '" + name + "'");
}

std::string entropy_column(const ConjugatePair& pair) { return "esum_" + pair.label(); }
std::string position_column(RenyiOrder order) { return "rpos_" + order.label(); }
std::string momentum_column(RenyiOrder order) { return "rmom_" + order.label(); }

SeriesTable to_table(const revivals::DiagnosticSeries& s) {
  s.validate();
  SeriesTable t;
  t.columns = {"t", "autocorr_sq", "dxdp"};
  t.data = {s.times, s.autocorr_sq, s.uncertainty_product};
  std::set<std::string> seen;
  for (std::size_t k = 0; k < s.pairs.size(); ++k) {
    const std::string name = entropy_column(s.pairs[k]);
    if (!seen.insert(name).second) continue;
    t.columns.push_back(name);
    t.data.push_back(s.entropy_sums[k]);
  }
  if (!s.position_renyi.empty()) {
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
      const std::string px = position_column(s.pairs[k].position_order());
      if (seen.insert(px).second) {
        t.columns.push_back(px);
        t.data.push_back(s.position_renyi[k]);
      }
      const std::string pp = momentum_column(s.pairs[k].momentum_order());
      if (seen.insert(pp).second) {
        t.columns.push_back(pp);
        t.data.push_back(s.momentum_renyi[k]);
      }
    }
  }
  return t;
}

std::string format_csv(const SeriesTable& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += ',';
    out += table.columns[k];
  }
  out += '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      if (k) out += ',';
      out += format_number(table.data[k][i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

SeriesTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("series CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  SeriesTable t;
  t.columns = split(line);
  if (t.columns.empty() || t.columns.front() != "t") {
    throw SchemaError("series CSV line 1: first column must be 't'");
  }
  t.data.assign(t.columns.size(), {});
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw SchemaError("series CSV line " + std::to_string(line_no) + ": " +
                        std::to_string(cells.size()) + " fields, header has " +
                        std::to_string(t.columns.size()));
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cells[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[k].size() || !std::isfinite(v)) {
        throw SchemaError("series CSV line " + std::to_string(line_no) + ": column '" +
                          t.columns[k] + "' holds \"" + cells[k] + "\", not a finite number");
      }
      t.data[k].push_back(v);
    }
  }
  if (t.rows() == 0) throw SchemaError("series CSV has a header but no rows");
  return t;
}

namespace {

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json timescales_json(const systems::Timescales& ts) {
  return {{"classical_period", ts.classical_period},
          {"revival", optional_json(ts.revival)},
          {"collapse", optional_json(ts.collapse)},
          {"principal_level", optional_json(ts.principal_level)}};
}

std::optional<double> optional_number(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  if (!doc[key].is_number()) throw SchemaError(std::string("metadata: '") + key + "' must be a number or null");
  return doc[key].get<double>();
}

const char* units_note(SystemKind kind) {
  switch (kind) {
    case SystemKind::sho:
      return "oscillator: mass, omega and hbar as configured";
    case SystemKind::well:
      return "well: scaled units, 2m = hbar = L = 1 unless overridden";
    case SystemKind::bouncer:
      return "bouncer: hbar = 2m = 1, lengths in l_g = (hbar^2 / 2 g m^2)^(1/3), energies in m g l_g";
  }
  return "";
}

}  // namespace

ordered_json make_meta(const RunConfig& config, const ResolvedRun& run, const SeriesTable& table,
                       const std::string& series_file) {
  ordered_json pairs = ordered_json::array();
  for (const auto& p : config.pairs) {
    const auto order = [](RenyiOrder o) {
      return o.is_infinite() ? ordered_json("inf") : ordered_json(o.value());
    };
    pairs.push_back({{"column", entropy_column(p)},
                     {"alpha", order(p.position_order())},
                     {"beta", order(p.momentum_order())},
                     {"bound", renyi_bound(p, run.hbar)}});
  }
  return {{"format", "qrev-series"},
          {"version", kVersion},
          {"system", to_string(config.system)},
          {"units", units_note(config.system)},
          {"hbar", run.hbar},
          {"packet", {{"x0", run.packet.x0}, {"p0", run.packet.p0}, {"sigma", run.packet.sigma}}},
          {"timescales", timescales_json(run.timescales)},
          {"series", series_file},
          {"rows", table.rows()},
          {"columns", table.columns},
          {"pairs", pairs},
          {"config", to_json(config)}};
}

SeriesMeta parse_meta(const json& doc) {
  if (!doc.is_object()) throw SchemaError("metadata must be a JSON object");
  if (doc.value("format", "") != "qrev-series") {
    throw SchemaError("metadata: 'format' must be \"qrev-series\"");
  }
  SeriesMeta m;
  try {
    m.system = doc.at("system").get<std::string>();
    m.hbar = doc.at("hbar").get<double>();
    const json& ts = doc.at("timescales");
    m.timescales.classical_period = ts.at("classical_period").get<double>();
    m.timescales.revival = optional_number(ts, "revival");
    m.timescales.collapse = optional_number(ts, "collapse");
    m.timescales.principal_level = optional_number(ts, "principal_level");
    m.columns = doc.at("columns").get<std::vector<std::string>>();
    m.rows = doc.at("rows").get<std::size_t>();
    const json& config = doc.at("config");
    if (config.contains("window")) m.detection.window = config["window"].get<std::size_t>();
    if (config.contains("prominence")) m.detection.prominence = config["prominence"].get<double>();
    if (config.contains("q_max")) m.detection.q_max = config["q_max"].get<long>();
    if (config.contains("tolerance")) m.detection.tolerance = config["tolerance"].get<double>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("metadata: ") + e.what());
  }
  if (!(m.timescales.classical_period > 0.0)) {
    throw SchemaError("metadata: classical_period must be positive");
  }
  return m;
}

ordered_json report_json(const std::vector<revivals::RevivalReport>& reports, const SeriesMeta& meta,
                         const std::string& series_file) {
  ordered_json columns = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json minima = ordered_json::array();
    for (const auto& m : r.minima) {
      ordered_json e{{"time", m.time}, {"value", m.value}};
      if (meta.timescales.revival) e["ratio"] = m.time / *meta.timescales.revival;
      if (m.fraction) {
        e["fraction"] = std::to_string(m.fraction->p) + "/" + std::to_string(m.fraction->q);
      } else {
        e["fraction"] = nullptr;
      }
      e["residual"] = optional_json(m.residual);
      minima.push_back(e);
    }
    ordered_json maxima = ordered_json::array();
    for (const auto& m : r.maxima) maxima.push_back({{"time", m.time}, {"value", m.value}});
    ordered_json collapse{{"expected", r.collapse_expected},
                          {"time", optional_json(r.collapse_estimate)}};
    if (!r.collapse_note.empty()) collapse["note"] = r.collapse_note;
    columns.push_back({{"column", r.column},
                       {"window", r.window},
                       {"prominence", r.prominence},
                       {"q_max", r.q_max},
                       {"tolerance", optional_json(r.tolerance)},
                       {"minima", minima},
                       {"maxima", maxima},
                       {"collapse", collapse}});
  }
  return {{"format", "qrev-report"},
          {"version", kVersion},
          {"system", meta.system},
          {"series", series_file},
          {"timescales", timescales_json(meta.timescales)},
          {"columns", columns}};
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + temp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::runtime_error("cannot move " + temp.string() + " to " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace qrev::cli
