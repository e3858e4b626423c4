#include "qmeter/run_config.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "qmeter/dynamics.hpp"
#include "qmeter/pumping.hpp"

namespace qmeter {

namespace {

constexpr double kPi = 3.14159265358979323846;

const Json& sweep_field(const Json& sweep, const char* field) {
  if (!sweep.contains(field)) {
    throw ConfigError(std::string("config: missing field 'sweep.") + field + "'");
  }
  return sweep.at(field);
}

std::vector<double> grid_from_json(const Json& j, const char* field) {
  if (!j.is_array()) {
    throw ConfigError(std::string("sweep: '") + field + "' must be an array");
  }
  if (j.empty()) {
    throw ConfigError(std::string("sweep: '") + field + "' is empty");
  }
  std::vector<double> out;
  for (const Json& v : j) {
    if (!v.is_number()) {
      throw ConfigError(std::string("sweep: '") + field + "' entries must be numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& body) {
  const int n_jobs = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (n_jobs == 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_jobs));
  for (int w = 0; w < n_jobs; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

void add_common_footer(ResultTable& table, const RunConfig& config) {
  table.add_footer("schema_version", std::to_string(kConfigSchemaVersion));
  table.add_footer("config_hash", fnv1a_hex(config.canonical.dump()));
  table.add_footer("gamma_e_rad_per_s_per_T", format_double(PhysicalConstants{}.gamma_e));
}

void add_integration_footer(ResultTable& table, const RunConfig& config) {
  table.add_footer("dt_s", config.propagation.dt_s > 0.0
                               ? format_double(config.propagation.dt_s)
                               : std::string("auto(0.02/max_rate)"));
  table.add_footer("t_max_s", config.propagation.t_max_s > 0.0
                                  ? format_double(config.propagation.t_max_s)
                                  : std::string("auto(20/k_total)"));
  table.add_footer("trace_floor", format_double(config.propagation.trace_floor));
  table.add_footer("decoherence", config.model.decoherence == Decoherence::Collapse
                                      ? "collapse"
                                      : "local-dephasing");
}

Json propagation_to_json(const PropagationOptions& p) {
  Json j;
  if (p.dt_s > 0.0) j["dt_s"] = p.dt_s;
  if (p.t_max_s > 0.0) j["t_max_s"] = p.t_max_s;
  j["trace_floor"] = p.trace_floor;
  return j;
}

PropagationOptions propagation_from_json(const Json& j) {
  PropagationOptions p;
  if (j.contains("dt_s")) p.dt_s = j.at("dt_s").get<double>();
  if (j.contains("t_max_s")) p.t_max_s = j.at("t_max_s").get<double>();
  if (j.contains("trace_floor")) p.trace_floor = j.at("trace_floor").get<double>();
  if (p.dt_s < 0.0) throw ConfigError("integration: 'dt_s' must be > 0");
  if (p.t_max_s < 0.0) throw ConfigError("integration: 't_max_s' must be > 0");
  if (!(p.trace_floor > 0.0) || p.trace_floor >= 1.0) {
    throw ConfigError("integration: 'trace_floor' must lie in (0, 1)");
  }
  return p;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::RadicalPair: return "radical-pair";
    case RunMode::SweepOrientation: return "sweep-orientation";
    case RunMode::SweepCoherence: return "sweep-coherence";
    case RunMode::PumpSteady: return "pump-steady";
    case RunMode::PumpTransient: return "pump-transient";
    case RunMode::ClassifyScenario: return "classify-scenario";
  }
  return "unknown";
}

RunMode run_mode_from_string(const std::string& name) {
  if (name == "radical-pair") return RunMode::RadicalPair;
  if (name == "sweep-orientation") return RunMode::SweepOrientation;
  if (name == "sweep-coherence") return RunMode::SweepCoherence;
  if (name == "pump-steady") return RunMode::PumpSteady;
  if (name == "pump-transient") return RunMode::PumpTransient;
  if (name == "classify-scenario") return RunMode::ClassifyScenario;
  throw ConfigError("config: unknown mode '" + name + "'");
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: document must be a JSON object");
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kConfigSchemaVersion) {
    throw ConfigError("config: unsupported schema_version (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }
  if (!j.contains("mode")) throw ConfigError("config: missing field 'mode'");

  RunConfig config;
  config.mode = run_mode_from_string(j.at("mode").get<std::string>());

  const bool needs_spin_system = config.mode == RunMode::RadicalPair ||
                                 config.mode == RunMode::SweepOrientation ||
                                 config.mode == RunMode::SweepCoherence ||
                                 config.mode == RunMode::ClassifyScenario;
  if (needs_spin_system) {
    if (!j.contains("system")) throw ConfigError("config: missing field 'system'");
    config.system.emplace(system_from_json(j.at("system")));
  }

  if (j.contains("open_system")) config.model = open_system_from_json(j.at("open_system"));
  if (j.contains("integration")) config.propagation = propagation_from_json(j.at("integration"));
  if (j.contains("initial_state")) {
    const std::string nuclear = j.at("initial_state").value("nuclear", "mixed");
    if (nuclear == "mixed") {
      config.initial.nuclear = NuclearInit::MaximallyMixed;
    } else if (nuclear == "up") {
      config.initial.nuclear = NuclearInit::PolarizedUp;
    } else {
      throw ConfigError("initial_state: 'nuclear' must be 'mixed' or 'up'");
    }
  }

  switch (config.mode) {
    case RunMode::RadicalPair: {
      if (!j.contains("hamiltonian")) throw ConfigError("config: missing field 'hamiltonian'");
      config.hamiltonian = hamiltonian_from_json(j.at("hamiltonian"), *config.system);
      break;
    }
    case RunMode::SweepOrientation:
    case RunMode::SweepCoherence: {
      if (!j.contains("hamiltonian")) throw ConfigError("config: missing field 'hamiltonian'");
      config.hamiltonian = hamiltonian_from_json(j.at("hamiltonian"), *config.system);
      if (!j.contains("field") || !j.at("field").contains("magnitude_uT")) {
        throw ConfigError("config: missing field 'field.magnitude_uT'");
      }
      config.field_uT = j.at("field").at("magnitude_uT").get<double>();
      if (!j.contains("sweep")) throw ConfigError("config: missing field 'sweep'");
      if (config.mode == RunMode::SweepCoherence) {
        config.tau_c_grid_s = grid_from_json(sweep_field(j.at("sweep"), "tau_c_s"), "tau_c_s");
        for (double tau : config.tau_c_grid_s) {
          if (!(tau > 0.0)) throw ConfigError("sweep: 'tau_c_s' values must be positive");
        }
      } else {
        config.theta_grid_deg = grid_from_json(sweep_field(j.at("sweep"), "theta_deg"), "theta_deg");
      }
      break;
    }
    case RunMode::PumpSteady:
    case RunMode::PumpTransient: {
      if (j.contains("scheme_preset")) {
        config.scheme.emplace(preset_scheme(j.at("scheme_preset").get<std::string>()));
      } else if (j.contains("scheme")) {
        config.scheme.emplace(scheme_from_json(j.at("scheme")));
      } else {
        throw ConfigError("config: missing field 'scheme' or 'scheme_preset'");
      }
      if (config.mode == RunMode::PumpSteady) {
        if (!j.contains("sweep")) throw ConfigError("config: missing field 'sweep'");
        config.n_bar_grid = grid_from_json(sweep_field(j.at("sweep"), "n_bar"), "n_bar");
        for (double n : config.n_bar_grid) {
          if (n < 0.0) throw ConfigError("sweep: 'n_bar' values must be >= 0");
        }
      } else {
        if (!j.contains("sweep")) throw ConfigError("config: missing field 'sweep'");
        config.time_grid_s = grid_from_json(sweep_field(j.at("sweep"), "t_s"), "t_s");
        for (double t : config.time_grid_s) {
          if (t < 0.0) throw ConfigError("sweep: 't_s' values must be >= 0");
        }
        if (!j.contains("initial_level")) {
          throw ConfigError("config: missing field 'initial_level'");
        }
        config.initial_level = j.at("initial_level").get<std::string>();
        config.scheme->index_of(config.initial_level);
      }
      break;
    }
    case RunMode::ClassifyScenario: {
      for (const char* key : {"h0", "h_ex", "h_int"}) {
        if (!j.contains(key)) {
          throw ConfigError(std::string("config: missing field '") + key + "'");
        }
      }
      config.h0 = hamiltonian_from_json(j.at("h0"), *config.system);
      config.h_ex = hamiltonian_from_json(j.at("h_ex"), *config.system);
      config.h_int = hamiltonian_from_json(j.at("h_int"), *config.system);
      break;
    }
  }

  config.canonical = run_config_to_json(config);
  return config;
}

Json run_config_to_json(const RunConfig& config) {
  Json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["mode"] = to_string(config.mode);
  if (config.system) j["system"] = system_to_json(*config.system);

  switch (config.mode) {
    case RunMode::RadicalPair:
      j["hamiltonian"] = hamiltonian_to_json(config.hamiltonian, *config.system);
      break;
    case RunMode::SweepOrientation:
      j["hamiltonian"] = hamiltonian_to_json(config.hamiltonian, *config.system);
      j["field"] = {{"magnitude_uT", config.field_uT}};
      j["sweep"] = {{"theta_deg", config.theta_grid_deg}};
      break;
    case RunMode::SweepCoherence:
      j["hamiltonian"] = hamiltonian_to_json(config.hamiltonian, *config.system);
      j["field"] = {{"magnitude_uT", config.field_uT}};
      j["sweep"] = {{"tau_c_s", config.tau_c_grid_s}};
      break;
    case RunMode::PumpSteady:
      j["scheme"] = scheme_to_json(*config.scheme);
      j["sweep"] = {{"n_bar", config.n_bar_grid}};
      break;
    case RunMode::PumpTransient:
      j["scheme"] = scheme_to_json(*config.scheme);
      j["sweep"] = {{"t_s", config.time_grid_s}};
      j["initial_level"] = config.initial_level;
      break;
    case RunMode::ClassifyScenario:
      j["h0"] = hamiltonian_to_json(config.h0, *config.system);
      j["h_ex"] = hamiltonian_to_json(config.h_ex, *config.system);
      j["h_int"] = hamiltonian_to_json(config.h_int, *config.system);
      break;
  }

  const bool quantum = config.mode != RunMode::PumpSteady && config.mode != RunMode::PumpTransient;
  if (quantum) {
    j["open_system"] = open_system_to_json(config.model);
    j["integration"] = propagation_to_json(config.propagation);
    j["initial_state"] = {
        {"nuclear", config.initial.nuclear == NuclearInit::PolarizedUp ? "up" : "mixed"}};
  }
  return j;
}

namespace {

std::vector<double> yield_row(const YieldRecord& r) {
  return {r.t_final_s,     r.yield_ground,     r.yield_prot_S, r.yield_prot_T,
          r.yield_prot(),  r.singlet_fraction(), r.residual_trace};
}

RunOutput run_radical_pair(const RunConfig& config) {
  const OperatorMatrix h = build(config.hamiltonian, *config.system);
  const DensityMatrix rho0 = radical_pair_initial_state(*config.system, config.initial);
  const YieldRecord record =
      compute_yields(rho0, h, *config.system, config.model, config.propagation);

  RunOutput out;
  out.table = ResultTable({"t_final", "yield_ground", "yield_prot_S", "yield_prot_T",
                           "yield_prot", "singlet_fraction", "residual_trace"},
                          {"s", "1", "1", "1", "1", "1", "1"});
  out.table.add_row(yield_row(record));
  add_common_footer(out.table, config);
  add_integration_footer(out.table, config);
  return out;
}

RunOutput run_sweep_orientation(const RunConfig& config, int jobs) {
  const DensityMatrix rho0 = radical_pair_initial_state(*config.system, config.initial);
  std::vector<YieldRecord> records(config.theta_grid_deg.size());
  parallel_for(config.theta_grid_deg.size(), jobs, [&](size_t i) {
    const double theta = config.theta_grid_deg[i] * kPi / 180.0;
    HamiltonianSpec spec = config.hamiltonian;
    ZeemanTerm zeeman;
    zeeman.b_uT = Vec3(config.field_uT * std::sin(theta), 0.0, config.field_uT * std::cos(theta));
    spec.terms.emplace_back(zeeman);
    records[i] = compute_yields(rho0, build(spec, *config.system), *config.system, config.model,
                                config.propagation);
  });

  RunOutput out;
  out.table = ResultTable({"theta", "yield_ground", "yield_prot_S", "yield_prot_T", "yield_prot",
                           "singlet_fraction", "residual_trace"},
                          {"deg", "1", "1", "1", "1", "1", "1"});
  for (size_t i = 0; i < records.size(); ++i) {
    std::vector<double> row = {config.theta_grid_deg[i]};
    const std::vector<double> y = yield_row(records[i]);
    row.insert(row.end(), y.begin() + 1, y.end());
    out.table.add_row(row);
  }
  add_common_footer(out.table, config);
  add_integration_footer(out.table, config);
  return out;
}

RunOutput run_sweep_coherence(const RunConfig& config, int jobs) {
  const std::vector<SweepPoint> points =
      coherence_sweep(config.hamiltonian, *config.system, config.field_uT, config.model,
                      config.tau_c_grid_s, config.propagation, config.initial, {}, jobs);

  RunOutput out;
  out.table = ResultTable({"tau_c", "phi_T_parallel", "phi_T_perpendicular", "difference", "dt"},
                          {"s", "1", "1", "1", "s"});
  for (const SweepPoint& p : points) {
    OpenSystemModel model = config.model;
    model.tau_c_s = p.tau_c_s;
    const double dt = effective_dt(
        build(with_field(config.hamiltonian, config.field_uT, FieldGeometry::Parallel),
              *config.system),
        model, config.propagation);
    out.table.add_row({p.tau_c_s, p.yields.parallel.yield_prot_T,
                       p.yields.perpendicular.yield_prot_T, p.yields.difference(), dt});
  }
  add_common_footer(out.table, config);
  add_integration_footer(out.table, config);
  return out;
}

RunOutput run_pump_steady(const RunConfig& config) {
  const KineticScheme& scheme = *config.scheme;
  if (!scheme.pump) {
    throw ConfigError("pump-steady: scheme has no pump transition to sweep");
  }
  RunOutput out;
  std::vector<std::string> names = {"n_bar"};
  std::vector<std::string> units = {"1"};
  for (const std::string& level : scheme.levels) {
    names.push_back("rho_" + level);
    units.push_back("1");
  }
  out.table = ResultTable(names, units);
  for (double n_bar : config.n_bar_grid) {
    KineticScheme s = scheme;
    s.pump->n_bar = n_bar;
    const Populations p = steady_state(s);
    std::vector<double> row = {n_bar};
    row.insert(row.end(), p.occupation.begin(), p.occupation.end());
    out.table.add_row(row);
  }
  add_common_footer(out.table, config);
  return out;
}

RunOutput run_pump_transient(const RunConfig& config) {
  const KineticScheme& scheme = *config.scheme;
  Populations p0;
  p0.occupation.assign(scheme.levels.size(), 0.0);
  p0.occupation[static_cast<size_t>(scheme.index_of(config.initial_level))] = 1.0;

  RunOutput out;
  std::vector<std::string> names = {"t"};
  std::vector<std::string> units = {"s"};
  for (const std::string& level : scheme.levels) {
    names.push_back("rho_" + level);
    units.push_back("1");
  }
  out.table = ResultTable(names, units);
  for (double t : config.time_grid_s) {
    const Populations p = transient(scheme, p0, t);
    std::vector<double> row = {t};
    row.insert(row.end(), p.occupation.begin(), p.occupation.end());
    out.table.add_row(row);
  }
  add_common_footer(out.table, config);
  return out;
}

}  // namespace

ScenarioReport classify_scenario(const RunConfig& config) {
  if (config.mode != RunMode::ClassifyScenario) {
    throw ConfigError("classify_scenario: config mode must be 'classify-scenario'");
  }
  const SpinSystem& system = *config.system;
  const OperatorMatrix h0 = build(config.h0, system);
  const OperatorMatrix h_ex = build(config.h_ex, system);
  const OperatorMatrix h_int = build(config.h_int, system);

  const double n0 = spectral_norm(h0);
  const double n_ex = spectral_norm(h_ex);
  const double n_int = spectral_norm(h_int);
  const auto rel = [](double comm, double na, double nb) {
    const double scale = na * nb;
    return scale > 0.0 ? comm / scale : 0.0;
  };

  ScenarioReport report;
  report.comm_h0_hint_rel = rel(commutator_norm(h0, h_int), n0, n_int);
  report.comm_hex_hint_rel = rel(commutator_norm(h_ex, h_int), n_ex, n_int);
  report.comm_h0_hex_rel = rel(commutator_norm(h0, h_ex), n0, n_ex);
  report.h_ex_norm = n_ex;

  constexpr double kCommTol = 1e-9;
  const bool h0_equals_hex =
      operator_norm(h0 - h_ex) <= 1e-9 * std::max(1.0, std::max(n0, n_ex));
  if (h0_equals_hex) {
    report.warnings.push_back(
        "H0 equals H_ex: the meter cannot acquire information about the system");
  }

  if (n_int == 0.0 || report.comm_h0_hint_rel > kCommTol) {
    // Direct coupling of meter eigenstates (or a pure radiation-field
    // measurement): rate equations suffice.
    report.scenario = 1;
  } else if (report.comm_hex_hint_rel > kCommTol && !h0_equals_hex) {
    report.scenario = 2;
  } else {
    report.scenario = 0;
    if (!h0_equals_hex) {
      report.warnings.push_back(
          "H_int commutes with both meter Hamiltonians: no measurement channel");
    }
  }

  if (config.model.dephasing_active()) {
    report.coherence = coherence_condition(h_ex, config.model.tau_c_s);
  } else {
    report.coherence.margin = std::numeric_limits<double>::infinity();
    report.coherence.satisfied = n_ex > 0.0;
  }

  std::ostringstream text;
  text << "commutator norms (spectral, relative to ||A|| ||B||):\n"
       << "  [H0,  H_int]: " << format_double(report.comm_h0_hint_rel) << "\n"
       << "  [Hex, H_int]: " << format_double(report.comm_hex_hint_rel) << "\n"
       << "  [H0,  Hex ]: " << format_double(report.comm_h0_hex_rel) << "\n"
       << "||H_ex|| = " << format_double(report.h_ex_norm) << " rad/s\n";
  if (config.model.dephasing_active()) {
    text << "coherence condition tau_c*||H_ex|| = " << format_double(report.coherence.margin)
         << (report.coherence.satisfied ? " > 1 (satisfied)\n" : " <= 1 (not satisfied)\n");
  }
  for (const std::string& w : report.warnings) text << "warning: " << w << "\n";
  switch (report.scenario) {
    case 1:
      text << "scenario (i): the measurement couples meter eigenstates directly; "
              "optical-pumping rate equations describe the readout\n";
      break;
    case 2:
      text << "scenario (ii): H_int commutes with H0 but not with H_ex; "
              "information transfer requires coherent excited-state dynamics\n";
      break;
    default:
      text << "no scenario: the configured interaction cannot transfer information\n";
      break;
  }
  report.text = text.str();
  return report;
}

RunOutput run(const RunConfig& config, int jobs) {
  switch (config.mode) {
    case RunMode::RadicalPair: return run_radical_pair(config);
    case RunMode::SweepOrientation: return run_sweep_orientation(config, jobs);
    case RunMode::SweepCoherence: return run_sweep_coherence(config, jobs);
    case RunMode::PumpSteady: return run_pump_steady(config);
    case RunMode::PumpTransient: return run_pump_transient(config);
    case RunMode::ClassifyScenario: {
      const ScenarioReport report = classify_scenario(config);
      RunOutput out;
      out.report = report.text;
      out.table = ResultTable({"comm_h0_hint_rel", "comm_hex_hint_rel", "comm_h0_hex_rel",
                               "h_ex_norm", "coherence_margin", "scenario"},
                              {"1", "1", "1", "rad/s", "1", "1"});
      out.table.add_row({report.comm_h0_hint_rel, report.comm_hex_hint_rel,
                         report.comm_h0_hex_rel, report.h_ex_norm, report.coherence.margin,
                         static_cast<double>(report.scenario)});
      add_common_footer(out.table, config);
      return out;
    }
  }
  throw ConfigError("run: unhandled mode");
}

RunConfig preset_run_config(const std::string& name) {
  const Json system = {{"sites", Json::array({
                                     Json{{"label", "eF"}, {"role", "electron"}, {"multiplicity", 2}},
                                     Json{{"label", "eT"}, {"role", "electron"}, {"multiplicity", 2}},
                                     Json{{"label", "nF"}, {"role", "nucleus"}, {"multiplicity", 2}},
                                 })}};
  const Json axial_hyperfine = {{"terms", Json::array({Json{{"type", "hyperfine"},
                                                            {"A_uT", {0.0, 0.0, 1000.0}},
                                                            {"electron", "eF"},
                                                            {"nucleus", "nF"}}})}};
  const Json iso_plus_dipolar = {
      {"terms", Json::array({Json{{"type", "hyperfine"},
                                  {"A_uT", {1000.0, 1000.0, 1000.0}},
                                  {"electron", "eF"},
                                  {"nucleus", "nF"}},
                             Json{{"type", "dipolar"},
                                  {"V_uT", 1000.0},
                                  {"axis", {0.0, 0.0, 1.0}},
                                  {"e1", "eF"},
                                  {"e2", "eT"}}})}};
  const Json tau_grid = {1e-9, 2e-9, 5e-9, 1e-8, 2e-8, 5e-8, 1e-7};

  Json j;
  if (name == "singlet-yield-parallel" || name == "singlet-yield-perpendicular") {
    const bool parallel = name == "singlet-yield-parallel";
    Json h = axial_hyperfine;
    h["terms"].push_back(Json{{"type", "zeeman"},
                              {"B_uT", parallel ? Json{0.0, 0.0, 50.0} : Json{50.0, 0.0, 0.0}}});
    j = Json{{"mode", "radical-pair"},
             {"system", system},
             {"hamiltonian", h},
             {"open_system",
              {{"tau_c_s", "inf"}, {"k_back_per_s", 0.0}, {"k_prot_per_s", parallel ? 1e6 : 1e5}}}};
  } else if (name == "coherence-sweep-anisotropic") {
    j = Json{{"mode", "sweep-coherence"},
             {"system", system},
             {"hamiltonian", axial_hyperfine},
             {"field", {{"magnitude_uT", 50.0}}},
             {"sweep", {{"tau_c_s", tau_grid}}},
             {"open_system",
              {{"tau_c_s", 1e-7},
               {"k_back_per_s", 1e6},
               {"k_prot_per_s", 1e6},
               {"decoherence", "collapse"}}}};
  } else if (name == "coherence-sweep-dipolar") {
    j = Json{{"mode", "sweep-coherence"},
             {"system", system},
             {"hamiltonian", iso_plus_dipolar},
             {"field", {{"magnitude_uT", 50.0}}},
             {"sweep", {{"tau_c_s", tau_grid}}},
             {"open_system",
              {{"tau_c_s", 1e-7},
               {"k_back_per_s", 1e6},
               {"k_prot_per_s", 1e6},
               {"decoherence", "collapse"}}}};
  } else if (name == "orientation-scan") {
    j = Json{{"mode", "sweep-orientation"},
             {"system", system},
             {"hamiltonian", axial_hyperfine},
             {"field", {{"magnitude_uT", 50.0}}},
             {"sweep", {{"theta_deg", {0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0}}}},
             {"open_system",
              {{"tau_c_s", 1e-7},
               {"k_back_per_s", 1e6},
               {"k_prot_per_s", 1e6},
               {"decoherence", "collapse"}}}};
  } else if (name == "pump-linearity-fig1a") {
    j = Json{{"mode", "pump-steady"},
             {"scheme_preset", "fig1a-light-harvesting"},
             {"sweep",
              {{"n_bar", {1e-6, 3.162277660168379e-6, 1e-5, 3.162277660168379e-5, 1e-4,
                          3.162277660168379e-4, 1e-3}}}}};
  } else if (name == "rhodopsin-transient-fig1b") {
    j = Json{{"mode", "pump-transient"},
             {"scheme_preset", "fig1b-rhodopsin"},
             {"initial_level", "3"},
             {"sweep", {{"t_s", {1e-14, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8}}}}};
  } else if (name == "scenario-radical-pair") {
    j = Json{{"mode", "classify-scenario"},
             {"system", system},
             {"h0", {{"terms", Json::array({Json{{"type", "exchange"},
                                                 {"J_uT", 1000.0},
                                                 {"e1", "eF"},
                                                 {"e2", "eT"}}})}}},
             {"h_ex", axial_hyperfine},
             {"h_int", {{"terms", Json::array({Json{{"type", "zeeman"},
                                                    {"B_uT", {50.0, 0.0, 0.0}}}})}}},
             {"open_system", {{"tau_c_s", 1e-7}}}};
  } else {
    throw ConfigError("preset_run_config: unknown preset '" + name + "'");
  }
  return parse_run_config(j);
}

std::vector<std::string> preset_run_config_names() {
  return {"singlet-yield-parallel", "singlet-yield-perpendicular", "coherence-sweep-anisotropic",
          "coherence-sweep-dipolar", "orientation-scan",           "pump-linearity-fig1a",
          "rhodopsin-transient-fig1b", "scenario-radical-pair"};
}

}  // namespace qmeter
