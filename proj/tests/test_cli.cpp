#include <doctest.h>

#include <sstream>

#include "qmeter/run_config.hpp"

using namespace qmeter;

namespace {

Json minimal_pump_steady() {
  return Json{{"mode", "pump-steady"},
              {"scheme_preset", "fig1a-light-harvesting"},
              {"sweep", {{"n_bar", {1e-5, 1e-4}}}}};
}

Json fast_orientation_sweep() {
  return Json{
      {"mode", "sweep-orientation"},
      {"system",
       {{"sites",
         {{{"label", "eF"}, {"role", "electron"}, {"multiplicity", 2}},
          {{"label", "eT"}, {"role", "electron"}, {"multiplicity", 2}},
          {{"label", "nF"}, {"role", "nucleus"}, {"multiplicity", 2}}}}}},
      {"hamiltonian",
       {{"terms",
         {{{"type", "hyperfine"}, {"A_uT", {0, 0, 1000}}, {"electron", "eF"}, {"nucleus", "nF"}}}}}},
      {"field", {{"magnitude_uT", 50.0}}},
      {"sweep", {{"theta_deg", {0.0, 45.0, 90.0}}}},
      {"open_system",
       {{"tau_c_s", 1e-8}, {"k_back_per_s", 1e6}, {"k_prot_per_s", 1e7}, {"decoherence", "collapse"}}}};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validation errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_run_config(Json{{"mode", "time-travel"}}),
                       doctest::Contains("time-travel"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(Json::object()), doctest::Contains("mode"), ConfigError);

  Json no_sweep = minimal_pump_steady();
  no_sweep.erase("sweep");
  CHECK_THROWS_WITH_AS(parse_run_config(no_sweep), doctest::Contains("sweep"), ConfigError);

  Json empty_grid = minimal_pump_steady();
  empty_grid["sweep"]["n_bar"] = Json::array();
  CHECK_THROWS_WITH_AS(parse_run_config(empty_grid), doctest::Contains("n_bar"), ConfigError);

  Json bad_version = minimal_pump_steady();
  bad_version["schema_version"] = 99;
  CHECK_THROWS_WITH_AS(parse_run_config(bad_version), doctest::Contains("schema_version"),
                       ConfigError);

  Json missing_field = fast_orientation_sweep();
  missing_field.erase("field");
  CHECK_THROWS_WITH_AS(parse_run_config(missing_field), doctest::Contains("magnitude_uT"),
                       ConfigError);
}

TEST_CASE("configs round-trip to an identical canonical form") {
  for (const Json& doc : {minimal_pump_steady(), fast_orientation_sweep()}) {
    const RunConfig config = parse_run_config(doc);
    const RunConfig echoed = parse_run_config(config.canonical);
    CHECK(config.canonical.dump() == echoed.canonical.dump());
    CHECK(fnv1a_hex(config.canonical.dump()) == fnv1a_hex(echoed.canonical.dump()));
  }
}

TEST_CASE("every built-in preset parses and reports its mode") {
  for (const std::string& name : preset_run_config_names()) {
    const RunConfig config = preset_run_config(name);
    CHECK(!config.canonical.empty());
  }
  CHECK(preset_run_config("coherence-sweep-anisotropic").mode == RunMode::SweepCoherence);
  CHECK(preset_run_config("scenario-radical-pair").mode == RunMode::ClassifyScenario);
  CHECK_THROWS_AS(preset_run_config("definitely-not-real"), ConfigError);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  const RunConfig config = parse_run_config(fast_orientation_sweep());
  const std::string csv1 = run(config, 1).table.to_csv();
  const std::string csv2 = run(config, 4).table.to_csv();
  const std::string csv3 = run(config, 1).table.to_csv();
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv3);
}

TEST_CASE("tables carry a units row and a provenance footer") {
  const RunOutput out = run(parse_run_config(minimal_pump_steady()), 1);
  const std::string csv = out.table.to_csv();

  std::istringstream lines(csv);
  std::string header, units;
  std::getline(lines, header);
  std::getline(lines, units);
  CHECK(header == "n_bar,rho_1,rho_3,rho_2,rho_X");
  CHECK(units == "1,1,1,1,1");
  CHECK(csv.find("# schema_version=1") != std::string::npos);
  CHECK(csv.find("# config_hash=") != std::string::npos);
  CHECK(csv.find("# gamma_e_rad_per_s_per_T=176085963000") != std::string::npos);

  const std::string json_payload = out.table.to_json();
  const Json parsed = Json::parse(json_payload);
  CHECK(parsed.at("rows").size() == 2);
  CHECK(parsed.at("provenance").contains("config_hash"));
}

TEST_CASE("quantum runs record integration settings in the footer") {
  RunConfig config = parse_run_config(fast_orientation_sweep());
  const std::string csv = run(config, 2).table.to_csv();
  CHECK(csv.find("# dt_s=auto(0.02/max_rate)") != std::string::npos);
  CHECK(csv.find("# trace_floor=") != std::string::npos);
  CHECK(csv.find("# decoherence=collapse") != std::string::npos);
}

TEST_CASE("pump-steady output reproduces the linearity study shape") {
  const RunOutput out = run(preset_run_config("pump-linearity-fig1a"), 1);
  REQUIRE(out.table.row_count() == 7);
  const auto& rows = out.table.rows();
  // rho_2 is column 3; linear growth with n_bar.
  for (size_t r = 1; r < rows.size(); ++r) {
    CHECK(rows[r][3] > rows[r - 1][3]);
  }
}

TEST_CASE("pump-transient starts from the requested level") {
  const RunOutput out = run(preset_run_config("rhodopsin-transient-fig1b"), 1);
  REQUIRE(out.table.row_count() == 7);
  // At t = 1e-14 s the |3> population has only begun to drain:
  // exp(-(G32 + G31) t) with G32 = (80 fs)^-1.
  const double expected = std::exp(-(1.0 / 80e-15 + 1.0 / 20e-12) * 1e-14);
  CHECK(out.table.rows()[0][2] == doctest::Approx(expected).epsilon(1e-6));
  // By t = 1e-8 s the chain has emptied into |c> and |X>.
  const auto& last = out.table.rows().back();
  CHECK(last[2] < 1e-6);
  CHECK(last[1] + last[5] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scenario classification matches the measurement taxonomy") {
  const RunConfig config = preset_run_config("scenario-radical-pair");
  const ScenarioReport report = classify_scenario(config);
  CHECK(report.scenario == 2);
  CHECK(report.comm_h0_hint_rel < 1e-9);
  CHECK(report.comm_hex_hint_rel > 1e-9);
  CHECK(report.coherence.satisfied);
  CHECK(report.coherence.margin == doctest::Approx(4.402149075).epsilon(1e-9));
  CHECK(report.text.find("scenario (ii)") != std::string::npos);

  // H0 == H_ex: no information can be acquired.
  Json same = config.canonical;
  same["h_ex"] = same["h0"];
  const ScenarioReport degenerate = classify_scenario(parse_run_config(same));
  CHECK(degenerate.scenario == 0);
  REQUIRE(!degenerate.warnings.empty());
  CHECK(degenerate.warnings.front().find("cannot acquire") != std::string::npos);

  // H_int = 0 degenerates to scenario (i).
  Json no_int = config.canonical;
  no_int["h_int"] = Json{{"terms", Json::array()}};
  CHECK(classify_scenario(parse_run_config(no_int)).scenario == 1);
}

TEST_CASE("run surfaces classification through the normal output path") {
  const RunOutput out = run(preset_run_config("scenario-radical-pair"), 1);
  CHECK(out.report.find("scenario (ii)") != std::string::npos);
  REQUIRE(out.table.row_count() == 1);
  CHECK(out.table.rows()[0][5] == 2.0);
}

TEST_CASE("radical-pair mode emits a single yield row") {
  RunConfig config = preset_run_config("singlet-yield-parallel");
  // Shrink the horizon so the unit test stays fast; acceptance runs the
  // full-length version.
  config.propagation.t_max_s = 2e-6;
  const RunOutput out = run(config, 1);
  REQUIRE(out.table.row_count() == 1);
  CHECK(out.table.names()[5] == "singlet_fraction");
  const double fraction = out.table.rows()[0][5];
  CHECK(fraction > 0.4);
  CHECK(fraction < 0.6);
}

TEST_SUITE_END();
