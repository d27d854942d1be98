#include "qrev/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qrev/errors.hpp"
#include "qrev/revivals/diagnostics.hpp"

namespace qrev::cli {

using nlohmann::json;

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::sho: return "sho";
    case SystemKind::well: return "well";
    case SystemKind::bouncer: return "bouncer";
  }
  return "?";
}

namespace {

const std::set<std::string> kKeys = {
    "system",  "mass",      "length",    "hbar",     "omega",      "n_min",
    "n_max",   "x0",        "p0",        "sigma",    "t_start",    "t_end",
    "t_end_rev", "t_end_cl", "samples",  "pairs",    "components", "window",
    "prominence", "q_max",  "tolerance", "momentum_extent", "momentum_per_level",
    "wall_margin_sigmas", "bouncer_step", "threads"};

double number(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "'" + key + "' must be finite");
  return x;
}

std::optional<double> optional_number(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  return number(doc, key);
}

std::optional<double> positive(const json& doc, const std::string& key) {
  auto v = optional_number(doc, key);
  if (v && !(*v > 0.0)) throw ConfigError(key, "'" + key + "' must be positive");
  return v;
}

std::optional<std::size_t> count(const json& doc, const std::string& key, std::size_t least) {
  if (!doc.contains(key)) return std::nullopt;
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(least)) {
    throw ConfigError(key, "'" + key + "' must be an integer >= " + std::to_string(least));
  }
  return static_cast<std::size_t>(v.get<long long>());
}

json order_json(RenyiOrder order) {
  if (order.is_infinite()) return "inf";
  return order.value();
}

}  // namespace

double parse_order(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw ConfigError(field, "Renyi order must be a number or a string");
  const std::string text = value.get<std::string>();
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    } else {
      const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      std::size_t used_den = 0;
      const double p = std::stod(num, &used);
      const double q = std::stod(den, &used_den);
      if (used == num.size() && used_den == den.size() && q != 0.0) return p / q;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(field, "cannot read Renyi order \"" + text + "\"");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) throw ConfigError(key, "unknown key '" + key + "'");
  }

  RunConfig c;
  if (!doc.contains("system") || !doc["system"].is_string()) {
    throw ConfigError("system", "'system' must be one of \"sho\", \"well\", \"bouncer\"");
  }
  const std::string system = doc["system"].get<std::string>();
  if (system == "sho") {
    c.system = SystemKind::sho;
  } else if (system == "well") {
    c.system = SystemKind::well;
  } else if (system == "bouncer") {
    c.system = SystemKind::bouncer;
  } else {
    throw ConfigError("system", "unknown system \"" + system + "\"");
  }

  c.mass = positive(doc, "mass");
  c.length = positive(doc, "length");
  c.hbar = positive(doc, "hbar");
  c.omega = positive(doc, "omega");
  c.n_min = count(doc, "n_min", 1);
  c.n_max = count(doc, "n_max", 1);

  if (doc.contains("x0")) c.x0 = number(doc, "x0");
  if (doc.contains("p0")) c.p0 = number(doc, "p0");
  if (doc.contains("sigma")) {
    if (doc["sigma"].is_string() && doc["sigma"].get<std::string>() == "coherent") {
      if (c.system != SystemKind::sho) {
        throw ConfigError("sigma", "'sigma': \"coherent\" only applies to the oscillator");
      }
    } else {
      c.sigma = positive(doc, "sigma");
    }
  }

  if (doc.contains("t_start")) c.t_start = number(doc, "t_start");
  c.t_end = optional_number(doc, "t_end");
  c.t_end_rev = positive(doc, "t_end_rev");
  c.t_end_cl = positive(doc, "t_end_cl");
  const int ends = (c.t_end ? 1 : 0) + (c.t_end_rev ? 1 : 0) + (c.t_end_cl ? 1 : 0);
  if (ends != 1) {
    throw ConfigError("t_end", "give exactly one of 't_end', 't_end_rev', 't_end_cl'");
  }
  const auto samples = count(doc, "samples", 2);
  if (!samples) throw ConfigError("samples", "'samples' (>= 2) is required");
  c.samples = *samples;

  if (!doc.contains("pairs") || !doc["pairs"].is_array() || doc["pairs"].empty()) {
    throw ConfigError("pairs", "'pairs' must be a non-empty list of [alpha, beta]");
  }
  for (const auto& entry : doc["pairs"]) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ConfigError("pairs", "each entry of 'pairs' must be [alpha, beta]");
    }
    try {
      c.pairs.emplace_back(RenyiOrder(parse_order(entry[0], "pairs")),
                           RenyiOrder(parse_order(entry[1], "pairs")));
    } catch (const ContractError& e) {
      throw ConfigError("pairs", std::string("'pairs': ") + e.what());
    }
  }
  if (doc.contains("components")) {
    if (!doc["components"].is_boolean()) {
      throw ConfigError("components", "'components' must be true or false");
    }
    c.components = doc["components"].get<bool>();
  }

  c.detection.window = count(doc, "window", 1);
  if (auto p = optional_number(doc, "prominence")) {
    if (*p < 0.0) throw ConfigError("prominence", "'prominence' must be >= 0");
    c.detection.prominence = p;
  }
  if (auto q = count(doc, "q_max", 2)) c.detection.q_max = static_cast<long>(*q);
  c.detection.tolerance = positive(doc, "tolerance");

  if (auto v = optional_number(doc, "momentum_extent")) {
    if (*v < 1.0) throw ConfigError("momentum_extent", "'momentum_extent' must be >= 1");
    c.numerics.well_momentum_extent = *v;
  }
  if (auto v = count(doc, "momentum_per_level", 1)) c.numerics.well_momentum_per_level = *v;
  if (auto v = positive(doc, "wall_margin_sigmas")) c.numerics.well_margin_sigmas = *v;
  if (auto v = positive(doc, "bouncer_step")) c.numerics.bouncer_step = *v;
  if (auto v = count(doc, "threads", 0)) c.threads = static_cast<unsigned>(*v);
  return c;
}

namespace {

std::size_t line_of(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path + ":" + std::to_string(line_of(text, e.byte)) +
                              ": config error: malformed JSON (" + e.what() + ")");
  }
  try {
    return parse_config(doc);
  } catch (const ConfigError& e) {
    throw anchor(e, path, text);
  }
}

ConfigError anchor(const ConfigError& error, const std::string& path, const std::string& text) {
  std::size_t line = 1;
  if (!error.field().empty()) {
    const auto at = text.find("\"" + error.field() + "\"");
    if (at != std::string::npos) line = line_of(text, at);
  }
  return ConfigError(error.field(),
                     path + ":" + std::to_string(line) + ": config error: " + error.what());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json out;
  out["system"] = to_string(c.system);
  if (c.mass) out["mass"] = *c.mass;
  if (c.length) out["length"] = *c.length;
  if (c.hbar) out["hbar"] = *c.hbar;
  if (c.omega) out["omega"] = *c.omega;
  if (c.n_min) out["n_min"] = *c.n_min;
  if (c.n_max) out["n_max"] = *c.n_max;
  out["x0"] = c.x0;
  out["p0"] = c.p0;
  if (c.sigma) {
    out["sigma"] = *c.sigma;
  } else {
    out["sigma"] = "coherent";
  }
  out["t_start"] = c.t_start;
  if (c.t_end) out["t_end"] = *c.t_end;
  if (c.t_end_rev) out["t_end_rev"] = *c.t_end_rev;
  if (c.t_end_cl) out["t_end_cl"] = *c.t_end_cl;
  out["samples"] = c.samples;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& p : c.pairs) {
    pairs.push_back({order_json(p.position_order()), order_json(p.momentum_order())});
  }
  out["pairs"] = pairs;
  out["components"] = c.components;
  if (c.detection.window) out["window"] = *c.detection.window;
  if (c.detection.prominence) out["prominence"] = *c.detection.prominence;
  out["q_max"] = c.detection.q_max;
  if (c.detection.tolerance) out["tolerance"] = *c.detection.tolerance;
  if (c.system == SystemKind::well) {
    out["momentum_extent"] = c.numerics.well_momentum_extent;
    out["momentum_per_level"] = c.numerics.well_momentum_per_level;
    out["wall_margin_sigmas"] = c.numerics.well_margin_sigmas;
  }
  if (c.system == SystemKind::bouncer) out["bouncer_step"] = c.numerics.bouncer_step;
  return out;
}

ResolvedRun resolve(const RunConfig& c) {
  auto reject = [&](bool present, const char* key) {
    if (present) {
      throw ConfigError(key, std::string("'") + key + "' does not apply to system " +
                                 to_string(c.system));
    }
  };

  ResolvedRun run;
  run.packet = systems::GaussianPacket{c.x0, c.p0, c.sigma.value_or(1.0)};
  try {
    switch (c.system) {
      case SystemKind::sho: {
        reject(c.length.has_value(), "length");
        reject(c.n_min.has_value(), "n_min");
        reject(c.n_max.has_value(), "n_max");
        systems::OscillatorSystem sys{c.mass.value_or(1.0), c.omega.value_or(1.0), c.hbar.value_or(1.0)};
        sys.validate();
        if (!c.sigma) run.packet.sigma = sys.coherent_sigma();
        run.packet.validate();
        run.timescales = systems::timescales(sys, run.packet);
        run.hbar = sys.hbar;
        run.system = sys;
        break;
      }
      case SystemKind::well: {
        reject(c.omega.has_value(), "omega");
        if (!c.sigma) throw ConfigError("sigma", "'sigma' is required");
        run.packet.validate();
        systems::WellSystem sys;
        if (c.n_min || c.n_max) {
          if (!c.n_min || !c.n_max) throw ConfigError("n_max", "give both 'n_min' and 'n_max'");
          sys = systems::WellSystem{c.mass.value_or(0.5), c.length.value_or(1.0), c.hbar.value_or(1.0),
                                    *c.n_min, *c.n_max};
        } else {
          sys = systems::well_system_for(run.packet, c.mass.value_or(0.5), c.length.value_or(1.0),
                                         c.hbar.value_or(1.0));
        }
        sys.validate();
        const double margin = c.numerics.well_margin_sigmas * run.packet.sigma;
        if (run.packet.x0 - margin <= 0.0 || run.packet.x0 + margin >= sys.length) {
          throw ConfigError("x0", "packet x0 +- wall_margin_sigmas * sigma must lie inside (0, L)");
        }
        run.timescales = systems::timescales(sys, run.packet);
        run.hbar = sys.hbar;
        run.system = sys;
        break;
      }
      case SystemKind::bouncer: {
        reject(c.mass.has_value(), "mass");
        reject(c.length.has_value(), "length");
        reject(c.hbar.has_value(), "hbar");
        reject(c.omega.has_value(), "omega");
        reject(c.n_min.has_value(), "n_min");
        if (!c.sigma) throw ConfigError("sigma", "'sigma' is required");
        run.packet.validate();
        if (!(run.packet.x0 >= 5.0 * run.packet.sigma)) {
          throw ConfigError("x0", "the bouncer packet needs z0 >= 5 sigma");
        }
        const std::size_t n_max = c.n_max.value_or(300);
        if (n_max > 5000) throw ConfigError("n_max", "'n_max' above 5000 is not supported");
        auto sys = systems::BouncerSystem::make(n_max);
        run.timescales = systems::timescales(sys, run.packet);
        run.hbar = 1.0;
        run.system = std::move(sys);
        break;
      }
    }
  } catch (const ContractError& e) {
    throw ConfigError("", std::string("invalid parameters: ") + e.what());
  }

  double t_end = 0.0;
  if (c.t_end) {
    t_end = *c.t_end;
  } else if (c.t_end_rev) {
    if (!run.timescales.revival) throw ConfigError("t_end_rev", "this system has no revival time");
    t_end = *c.t_end_rev * *run.timescales.revival;
  } else {
    t_end = *c.t_end_cl * run.timescales.classical_period;
  }
  if (!(t_end > c.t_start)) {
    throw ConfigError(c.t_end ? "t_end" : (c.t_end_rev ? "t_end_rev" : "t_end_cl"),
                      "empty time span: the end must be after t_start");
  }
  const double step = (t_end - c.t_start) / static_cast<double>(c.samples - 1);
  const double limit = run.timescales.classical_period / 8.0;
  if (step > limit * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "'samples': step " << step << " exceeds T_cl / 8 = " << limit << "; need at least "
        << static_cast<std::size_t>(std::ceil((t_end - c.t_start) / limit)) + 1 << " samples";
    throw ConfigError("samples", msg.str());
  }
  run.times = revivals::sample_times(c.t_start, t_end, c.samples);
  return run;
}

namespace {

const std::map<std::string, json>& presets() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> m;
    const double p0 = 400.0 * std::numbers::pi;
    const json well_base = {{"system", "well"}, {"x0", 0.5}, {"p0", p0},
                            {"sigma", std::sqrt(2.0) / 20.0}, {"t_start", 0.0},
                            {"t_end_rev", 0.5}, {"samples", 3201}};
    json fig1 = well_base;
    fig1["pairs"] = json::array({json::array({"2/3", 2})});
    m["well-fig1"] = fig1;

    json caption = fig1;
    caption["sigma"] = std::sqrt(2.0) / 10.0;
    caption["wall_margin_sigmas"] = 3.5;
    m["well-fig1-caption"] = caption;

    json fig2 = well_base;
    fig2["pairs"] = json::array({json::array({1, 1}), json::array({2, "2/3"}),
                                 json::array({"1/2", "inf"})});
    m["well-fig2"] = fig2;

    json fig3 = well_base;
    fig3["pairs"] = json::array({json::array({"inf", "1/2"})});
    fig3["components"] = true;
    m["well-fig3"] = fig3;

    m["bouncer-fig4"] = {{"system", "bouncer"}, {"x0", 100.0}, {"p0", 0.0}, {"sigma", 1.0},
                         {"n_max", 300}, {"t_start", 0.0}, {"t_end", 14640.0},
                         {"samples", 5857},
                         {"pairs", json::array({json::array({2, "2/3"}), json::array({"inf", "1/2"})})}};

    const json sho_pairs = json::array({json::array({1, 1}), json::array({"2/3", 2}),
                                        json::array({2, "2/3"}), json::array({"1/2", "inf"})});
    m["sho-coherent"] = {{"system", "sho"}, {"mass", 1.0}, {"omega", 1.0}, {"hbar", 1.0},
                         {"x0", 2.0}, {"p0", 0.0}, {"sigma", "coherent"}, {"t_start", 0.0},
                         {"t_end_cl", 3.0}, {"samples", 193}, {"pairs", sho_pairs}};
    m["sho-squeezed"] = {{"system", "sho"}, {"mass", 1.0}, {"omega", 1.0}, {"hbar", 1.0},
                         {"x0", 2.0}, {"p0", 0.0}, {"sigma", 0.5}, {"t_start", 0.0},
                         {"t_end_cl", 3.0}, {"samples", 193}, {"pairs", sho_pairs}};
    return m;
  }();
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, doc] : presets()) names.push_back(name);
  return names;
}

const json& preset(const std::string& name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("", "unknown preset '" + name + "'");
  return it->second;
}

}  // namespace qrev::cli
