#include <cctype>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"
#include "lfsync/manifest.hpp"
#include "lfsync/sim.hpp"
#include "lfsync/sweep.hpp"
#include "lfsync/version.hpp"

namespace {

using namespace lfsync;

// Exit codes: 0 success, 1 failed checks or failed cells, 2 parse error,
// 3 numerical abort.
constexpr int kExitOk = 0;
constexpr int kExitChecks = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Accepts either a flat config file or a manifest JSON (reproduction runs
// use the embedded config snapshot).
ConfigMap load_config_any(const std::string& path) {
  const std::string text = read_text_file(path);
  const size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{')
    return manifest_from_json(text).config;
  return parse_config_text(text);
}

int cmd_validate(const std::string& path) {
  ScenarioConfig cfg;
  try {
    cfg = scenario_from_config(strip_sweep_keys(load_config_any(path)));
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  const ValidationReport rep = validate_scenario(cfg);
  std::cout << rep.to_text();
  std::cout << (rep.all_pass() ? "all checks passed\n" : "checks failed\n");
  return rep.all_pass() ? kExitOk : kExitChecks;
}

int cmd_simulate(const std::string& path, const std::string& out_dir,
                 const std::string& name, const ConfigMap& overrides) {
  ConfigMap map;
  try {
    map = strip_sweep_keys(load_config_any(path));
    for (const auto& [key, value] : overrides) map[key] = value;
    (void)scenario_from_config(map);  // surface bad keys before running
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  const CellResult res = run_config(map, out_dir, name);
  if (!res.ok) {
    std::cerr << res.error << "\n";
    return res.manifest.status == "non_finite" ? kExitNumerical : kExitChecks;
  }
  std::cout << "l2_squared = " << format_g9(res.metrics.l2_squared) << "\n"
            << "l2 = " << format_g9(res.metrics.l2) << "\n"
            << "linf = " << format_g9(res.metrics.linf) << "\n"
            << "trace = " << res.manifest.trace_path << "\n"
            << "trace_hash = " << res.manifest.trace_hash << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& out_dir,
              int workers, const std::string& topo_csv,
              const std::string& m_csv, const std::string& tuner_csv,
              const ConfigMap& overrides) {
  ConfigMap map;
  SweepGrid grid;
  try {
    map = load_config_any(path);
    for (const auto& [key, value] : overrides) map[key] = value;
    grid = grid_from_config(map);
    if (!topo_csv.empty()) grid.topologies = split_csv(topo_csv);
    if (!m_csv.empty()) {
      grid.m_list.clear();
      for (const auto& v : split_csv(m_csv)) grid.m_list.push_back(std::stoi(v));
    }
    if (!tuner_csv.empty()) {
      grid.tuners.clear();
      for (const auto& v : split_csv(tuner_csv))
        grid.tuners.push_back(tuner_from_string(v));
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  if (grid.topologies.empty() || grid.m_list.empty() || grid.tuners.empty()) {
    std::cerr << "empty grid\n";
    return kExitChecks;
  }
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  const SweepResult res = run_sweep(map, grid, workers, out_dir);
  std::cout << res.table;
  for (size_t k = 0; k < res.results.size(); ++k)
    if (!res.results[k].ok)
      std::cerr << res.cells[k].name() << ": " << res.results[k].error << "\n";
  return res.all_ok() ? kExitOk : kExitChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Distributed adaptive leader-follower synchronization of linear agents "
      "over weighted digraphs"};
  app.set_version_flag("--version", lfsync::kVersion);
  app.require_subcommand(1);

  std::string cfg_path, out_dir = "out", run_name = "run";
  std::string topo_csv, m_csv, tuner_csv;
  int workers = 0, stride = 0;
  long seed = 0;

  auto* validate = app.add_subcommand(
      "validate", "Run model, network and passivity checks on a config");
  validate->add_option("--config", cfg_path, "Config file or manifest JSON")
      ->required();

  auto* simulate = app.add_subcommand(
      "simulate", "Integrate one scenario; write trace, metrics and manifest");
  simulate->add_option("--config", cfg_path, "Config file or manifest JSON")
      ->required();
  simulate->add_option("--out", out_dir, "Output directory (default out)");
  simulate->add_option("--name", run_name, "Artifact file stem (default run)");
  auto* sim_stride =
      simulate->add_option("--stride", stride, "Record every k-th step");
  auto* sim_seed = simulate->add_option("--seed", seed, "Scenario seed tag");

  auto* sweep = app.add_subcommand(
      "sweep", "Run a topologies x m x tuners grid and aggregate metrics");
  sweep->add_option("--config", cfg_path, "Base config file or manifest JSON")
      ->required();
  sweep->add_option("--out", out_dir, "Output directory (default out)");
  sweep->add_option("--workers", workers, "Worker threads (default: cores)");
  sweep->add_option("--topologies", topo_csv,
                    "Comma list, overrides sweep.topologies");
  sweep->add_option("--m", m_csv, "Comma list, overrides sweep.m");
  sweep->add_option("--tuners", tuner_csv, "Comma list, overrides sweep.tuners");
  auto* sw_stride =
      sweep->add_option("--stride", stride, "Record every k-th step");
  auto* sw_seed = sweep->add_option("--seed", seed, "Scenario seed tag");

  CLI11_PARSE(app, argc, argv);

  ConfigMap overrides;
  if (sim_stride->count() || sw_stride->count())
    overrides["sim.stride"] = std::to_string(stride);
  if (sim_seed->count() || sw_seed->count())
    overrides["sim.seed"] = std::to_string(seed);

  try {
    if (validate->parsed()) return cmd_validate(cfg_path);
    if (simulate->parsed())
      return cmd_simulate(cfg_path, out_dir, run_name, overrides);
    if (sweep->parsed())
      return cmd_sweep(cfg_path, out_dir, workers, topo_csv, m_csv, tuner_csv,
                       overrides);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const NonFinite& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitChecks;
  }
  return kExitChecks;
}
