#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qrev/cli/commands.hpp"
#include "qrev/errors.hpp"

namespace {

using namespace qrev::cli;

int run_simulate(const std::string& config_path, const std::string& preset_name,
                 const std::string& prefix, unsigned threads) {
  RunConfig config;
  if (!config_path.empty()) {
    config = load_config(config_path);
  } else {
    try {
      config = parse_config(preset(preset_name));
    } catch (const ConfigError& e) {
      throw ConfigError(e.field(), "preset " + preset_name + ": config error: " + e.what());
    }
  }
  if (threads) config.threads = threads;
  SimulateResult result;
  try {
    result = simulate(config, prefix);
  } catch (const ConfigError& e) {
    if (config_path.empty()) {
      throw ConfigError(e.field(), "preset " + preset_name + ": config error: " + e.what());
    }
    throw anchor(e, config_path, read_file(config_path));
  }
  std::printf("wrote %s (%zu rows)\nwrote %s\n", result.series_path.c_str(), result.rows,
              result.meta_path.c_str());
  return kOk;
}

int run_analyze(const AnalyzeRequest& request) {
  const AnalyzeResult result = analyze(request);
  std::fputs(summary_table(result).c_str(), stdout);
  std::printf("wrote %s\n", result.report_path.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet revivals and entropic uncertainty diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, preset_name, prefix;
  unsigned threads = 0;
  auto* sim = app.add_subcommand("simulate", "evolve a packet and write the diagnostic series");
  auto* config_opt = sim->add_option("--config", config_path, "flat JSON run configuration")
                         ->check(CLI::ExistingFile);
  auto* preset_opt = sim->add_option("--preset", preset_name, "bundled parameter set");
  config_opt->excludes(preset_opt);
  sim->add_option("--out", prefix, "output prefix for <prefix>_series.csv and <prefix>_meta.json")
      ->required();
  sim->add_option("--threads", threads, "worker threads (0: all cores)");

  AnalyzeRequest request;
  std::string out_prefix;
  auto* ana = app.add_subcommand("analyze", "detect and classify revivals in a series");
  ana->add_option("--series", request.series_path, "series CSV written by simulate")->required();
  ana->add_option("--meta", request.meta_path, "metadata JSON written by simulate")->required();
  ana->add_option("--window", request.window, "half-width of the extremum window in samples")
      ->check(CLI::PositiveNumber);
  ana->add_option("--prominence", request.prominence, "minimum extremum prominence")
      ->check(CLI::NonNegativeNumber);
  ana->add_option("--qmax", request.q_max, "largest denominator for fractions")
      ->check(CLI::Range(2L, 1000L));
  ana->add_option("--tol", request.tolerance, "classification tolerance in time units")
      ->check(CLI::PositiveNumber);
  ana->add_option("--out", out_prefix, "output prefix for <prefix>_report.json");

  std::string show;
  auto* pre = app.add_subcommand("presets", "list bundled presets or print one");
  pre->add_option("--show", show, "preset to print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sim) {
      if (config_path.empty() == preset_name.empty()) {
        std::cerr << "simulate: give exactly one of --config or --preset\n";
        return kConfigError;
      }
      return run_simulate(config_path, preset_name, prefix, threads);
    }
    if (*ana) {
      if (!out_prefix.empty()) request.out_prefix = out_prefix;
      return run_analyze(request);
    }
    if (show.empty()) {
      for (const auto& name : preset_names()) std::printf("%s\n", name.c_str());
    } else {
      std::printf("%s\n", preset(show).dump(2).c_str());
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchemaError;
  } catch (const qrev::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const qrev::DomainError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
