#pragma once

#include "lfsync/sim.hpp"

namespace lfsync {

struct MetricsRecord {
  std::string topology;
  int m = 0;
  std::string tuner;
  Vec per_agent_l2sq;       // integral of e_i^2 over [0, T]
  double l2_squared = 0.0;  // sum over agents
  double l2 = 0.0;          // sqrt of the aggregate
  double linf = 0.0;        // sup over time of max_i |e_i|
  double horizon = 0.0;
  double step = 0.0;
  long seed = 0;
};

// Trapezoidal quadrature of |e_i(t)|^2 on the recorded grid; fills the l2
// fields only.
MetricsRecord l2_norm(const Trajectory& traj);

double linf_norm(const Trajectory& traj);

// All norm fields plus the scenario key columns.
MetricsRecord make_metrics(const Trajectory& traj, const std::string& topology,
                           const std::string& tuner, long seed);

// CSV pivot with the exact header
// `topology, m, tuner, l2_squared, l2, linf, horizon, step, seed`.
std::string aggregate_table(const std::vector<MetricsRecord>& records);

}  // namespace lfsync
