#pragma once

#include "lfsync/manifest.hpp"
#include "lfsync/metrics.hpp"

namespace lfsync {

struct SweepCell {
  std::string topology;  // topology name or "random9"
  int m = 0;
  TunerKind tuner = TunerKind::gradient;
  std::string name() const;
};

struct CellResult {
  bool ok = false;
  std::string error;
  MetricsRecord metrics;
  RunManifest manifest;  // config echo and hash always present
  std::string trace;     // trace CSV text (kept when keep_trace)
};

// Integrates one config map end to end: prepare, simulate, metrics,
// manifest. With out_dir set, writes <name>.trace.csv / .metrics.csv /
// .agents.csv / .manifest.json there.
CellResult run_config(const ConfigMap& map, const std::string& out_dir,
                      const std::string& name, bool keep_trace = false);

struct SweepResult {
  std::vector<SweepCell> cells;     // grid order: topologies x m x tuners
  std::vector<CellResult> results;  // same order, worker-count independent
  std::string table;                // aggregate CSV over all cells that ran
  bool all_ok() const;
};

// Expands the grid over the base config and runs every cell on a fixed-size
// thread pool; results are merged by grid index, so output is identical for
// any worker count.
SweepResult run_sweep(const ConfigMap& base, const SweepGrid& grid,
                      int workers, const std::string& out_dir = "");

}  // namespace lfsync
