#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "qmeter/dynamics.hpp"
#include "qmeter/run_config.hpp"

namespace {

int default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmeter: radical-pair spin dynamics and optical-pumping kinetics"};

  std::string config_path, preset, mode, out_path, format = "csv";
  int jobs = default_jobs();
  double dt_override = 0.0, tmax_override = 0.0;
  bool echo_config = false, list_presets = false;

  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--preset", preset,
                 "Built-in experiment preset (see --list-presets)");
  app.add_option("--mode", mode, "Expected run mode; mismatches are rejected");
  app.add_option("--out", out_path, "Output path ('-' or empty: stdout)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "Worker threads for sweep points")
      ->check(CLI::PositiveNumber);
  app.add_option("--dt", dt_override, "Integrator step override, seconds");
  app.add_option("--tmax", tmax_override, "Integration horizon override, seconds");
  app.add_flag("--echo-config", echo_config, "Print the canonical config JSON and exit");
  app.add_flag("--list-presets", list_presets, "List built-in presets and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    std::cout << join(qmeter::preset_run_config_names()) << "\n";
    return 0;
  }

  try {
    qmeter::RunConfig config;
    if (!preset.empty()) {
      if (!config_path.empty()) {
        std::cerr << "error: --config and --preset are mutually exclusive\n";
        return 2;
      }
      config = qmeter::preset_run_config(preset);
    } else if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
      }
      qmeter::Json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        std::cerr << "error: invalid JSON in '" << config_path << "': " << e.what() << "\n";
        return 2;
      }
      config = qmeter::parse_run_config(j);
    } else {
      std::cerr << "error: one of --config or --preset is required\n";
      return 2;
    }

    if (!mode.empty() && qmeter::run_mode_from_string(mode) != config.mode) {
      std::cerr << "error: config mode '" << qmeter::to_string(config.mode)
                << "' does not match requested --mode '" << mode << "'\n";
      return 2;
    }
    if (dt_override > 0.0) config.propagation.dt_s = dt_override;
    if (tmax_override > 0.0) config.propagation.t_max_s = tmax_override;
    if (dt_override > 0.0 || tmax_override > 0.0) {
      config.canonical = qmeter::run_config_to_json(config);
    }

    if (echo_config) {
      std::cout << config.canonical.dump(2) << "\n";
      return 0;
    }

    const qmeter::RunOutput result = qmeter::run(config, jobs);
    if (!result.report.empty()) std::cerr << result.report;

    const std::string payload =
        format == "json" ? result.table.to_json() : result.table.to_csv();
    if (out_path.empty() || out_path == "-") {
      std::cout << payload;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write to '" << out_path << "'\n";
        return 2;
      }
      out << payload;
    }
    return 0;
  } catch (const qmeter::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
