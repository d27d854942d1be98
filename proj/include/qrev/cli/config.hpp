#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrev/entropy.hpp"
#include "qrev/revivals/report.hpp"
#include "qrev/systems/propagator.hpp"

namespace qrev::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Invalid run configuration. `field` names the offending key (empty for whole-document
/// problems) so callers can point at the line that holds it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Input files that do not match the series/metadata schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { sho, well, bouncer };

const char* to_string(SystemKind kind);

struct RunConfig {
  SystemKind system = SystemKind::well;
  // system parameters; unset entries take the system's defaults
  std::optional<double> mass;
  std::optional<double> length;
  std::optional<double> hbar;
  std::optional<double> omega;
  std::optional<std::size_t> n_min;
  std::optional<std::size_t> n_max;
  // packet; sigma unset means the coherent width (oscillator only)
  double x0 = 0.0;
  double p0 = 0.0;
  std::optional<double> sigma;
  // time span: t_end in absolute units or as a multiple of T_rev or T_cl
  double t_start = 0.0;
  std::optional<double> t_end;
  std::optional<double> t_end_rev;
  std::optional<double> t_end_cl;
  std::size_t samples = 0;
  std::vector<ConjugatePair> pairs;
  bool components = false;
  revivals::DetectionSettings detection;
  systems::PropagatorOptions numerics;
  unsigned threads = 0;
};

/// Parses the flat JSON document. Throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a config file; errors carry "<path>:<line>:" prefixes.
RunConfig load_config(const std::string& path);
/// Prefixes an error about a config file with "<path>:<line>: config error:", the line
/// being the first one that mentions the offending key (1 if none).
ConfigError anchor(const ConfigError& error, const std::string& path, const std::string& text);
/// The normalized document (all keys that are set, orders as numbers or "inf").
nlohmann::ordered_json to_json(const RunConfig& config);

/// Everything a run needs, with defaults filled in and preconditions checked.
struct ResolvedRun {
  systems::SystemSpec system;
  systems::GaussianPacket packet;
  systems::Timescales timescales;
  double hbar;
  std::vector<double> times;
};

/// Throws ConfigError when the system, packet or time grid violate their preconditions
/// (including the T_cl / 8 sampling rule).
ResolvedRun resolve(const RunConfig& config);

/// Bundled parameter sets.
std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
const nlohmann::json& preset(const std::string& name);

/// "2/3" -> 0.666..., "inf" -> infinity, numbers as is. Throws ConfigError.
double parse_order(const nlohmann::json& value, const std::string& field);

}  // namespace qrev::cli
