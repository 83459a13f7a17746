#include "lfsync/sweep.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"
#include "lfsync/version.hpp"

namespace lfsync {

std::string SweepCell::name() const {
  return topology + "_m" + std::to_string(m) + "_" + to_string(tuner);
}

CellResult run_config(const ConfigMap& map, const std::string& out_dir,
                      const std::string& name, bool keep_trace) {
  CellResult res;
  res.manifest.version = kVersion;
  res.manifest.config = map;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  };
  try {
    const ScenarioConfig cfg = scenario_from_config(map);
    const PreparedScenario ps = prepare_scenario(cfg);
    res.manifest.config = scenario_to_config(ps.cfg);
    const std::string topology = ps.net_spec.label.empty()
                                     ? to_string(ps.net_spec.topology)
                                     : ps.net_spec.label;
    const Trajectory traj = integrate(ps);
    res.metrics = make_metrics(traj, topology, to_string(ps.cfg.tuner.kind),
                               ps.cfg.seed);
    res.manifest.status = "ok";
    res.manifest.l2_squared = res.metrics.l2_squared;
    res.manifest.l2 = res.metrics.l2;
    res.manifest.linf = res.metrics.linf;
    const std::string trace = trace_csv(traj);
    res.manifest.trace_hash = hash_hex(trace);
    if (!out_dir.empty()) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      const std::string stem = (fs::path(out_dir) / name).string();
      res.manifest.trace_path = stem + ".trace.csv";
      res.manifest.metrics_path = stem + ".metrics.csv";
      res.manifest.agents_path = stem + ".agents.csv";
      write_text_file(res.manifest.trace_path, trace);
      write_text_file(res.manifest.metrics_path,
                      aggregate_table({res.metrics}));
      write_text_file(res.manifest.agents_path, agents_csv(res.metrics));
      res.manifest.duration_seconds = elapsed();
      write_manifest(stem + ".manifest.json", res.manifest);
    } else {
      res.manifest.duration_seconds = elapsed();
    }
    if (keep_trace) res.trace = trace;
    res.ok = true;
  } catch (const NonFinite& e) {
    res.ok = false;
    res.error = e.what();
    res.manifest.status = "non_finite";
    res.manifest.last_finite_time = e.last_finite_time;
    res.manifest.duration_seconds = elapsed();
    if (!out_dir.empty()) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      write_manifest((fs::path(out_dir) / (name + ".manifest.json")).string(),
                     res.manifest);
    }
  } catch (const std::exception& e) {
    res.ok = false;
    res.error = e.what();
    res.manifest.status = "error";
    res.manifest.duration_seconds = elapsed();
  }
  return res;
}

SweepResult run_sweep(const ConfigMap& base, const SweepGrid& grid,
                      int workers, const std::string& out_dir) {
  SweepResult out;
  for (const auto& topo : grid.topologies)
    for (int m : grid.m_list)
      for (TunerKind tuner : grid.tuners)
        out.cells.push_back({topo, m, tuner});
  if (out.cells.empty()) throw ConfigInvalid("empty grid");

  const ConfigMap scenario_base = strip_sweep_keys(base);
  auto cell_map = [&](const SweepCell& c) {
    ConfigMap map = scenario_base;
    map.erase("network.edges");
    map.erase("network.file");
    map["network.topology"] = c.topology;
    map["network.m"] = std::to_string(c.m);
    map["tuner.kind"] = to_string(c.tuner);
    return map;
  };

  out.results.resize(out.cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= out.cells.size()) return;
      out.results[k] =
          run_config(cell_map(out.cells[k]), out_dir, out.cells[k].name());
    }
  };
  const int nthreads = std::max(
      1, std::min<int>(workers, static_cast<int>(out.cells.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<MetricsRecord> records;
  for (const auto& r : out.results)
    if (r.ok) records.push_back(r.metrics);
  out.table = aggregate_table(records);
  if (!out_dir.empty())
    write_text_file(
        (std::filesystem::path(out_dir) / "sweep.metrics.csv").string(),
        out.table);
  return out;
}

bool SweepResult::all_ok() const {
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

}  // namespace lfsync
