#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmeter/json_io.hpp"
#include "qmeter/result_table.hpp"

namespace qmeter {

inline constexpr int kConfigSchemaVersion = 1;

enum class RunMode {
  RadicalPair,
  SweepOrientation,
  SweepCoherence,
  PumpSteady,
  PumpTransient,
  ClassifyScenario,
};

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

/// A fully validated run description. `canonical` holds the normalized
/// JSON form (defaults materialized, keys sorted by the serializer), which
/// is what gets hashed into the provenance footer.
struct RunConfig {
  RunMode mode = RunMode::RadicalPair;
  Json canonical;

  std::optional<SpinSystem> system;
  HamiltonianSpec hamiltonian;  // full spec (radical-pair) or field-free base (sweeps)
  double field_uT = 0.0;
  OpenSystemModel model;
  InitialState initial;
  PropagationOptions propagation;

  std::vector<double> tau_c_grid_s;
  std::vector<double> theta_grid_deg;
  std::vector<double> n_bar_grid;
  std::vector<double> time_grid_s;

  std::optional<KineticScheme> scheme;
  std::string initial_level;

  HamiltonianSpec h0, h_ex, h_int;  // classify-scenario
};

/// Parses and validates a config document; throws ConfigError naming the
/// offending field.
RunConfig parse_run_config(const Json& j);

/// Canonical JSON for a parsed config; parse(to_json(parse(x))) yields an
/// identical canonical form (hash equality).
Json run_config_to_json(const RunConfig& config);

/// Built-in, one-command-reproducible experiment configurations.
RunConfig preset_run_config(const std::string& name);
std::vector<std::string> preset_run_config_names();

struct RunOutput {
  ResultTable table;
  std::string report;  // non-empty for classify-scenario
};

/// Executes the run. Deterministic: identical configs produce
/// byte-identical tables regardless of the worker count.
RunOutput run(const RunConfig& config, int jobs = 1);

struct ScenarioReport {
  double comm_h0_hint_rel = 0.0;
  double comm_hex_hint_rel = 0.0;
  double comm_h0_hex_rel = 0.0;
  double h_ex_norm = 0.0;  // rad/s
  CoherenceCheck coherence;
  int scenario = 0;  // 1, 2, or 0 when no information can be acquired
  std::vector<std::string> warnings;
  std::string text;
};

ScenarioReport classify_scenario(const RunConfig& config);

}  // namespace qmeter
