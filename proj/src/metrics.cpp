#include "lfsync/metrics.hpp"

#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"

namespace lfsync {

MetricsRecord l2_norm(const Trajectory& traj) {
  if (traj.t.size() < 2 || traj.e.rows() < 2)
    throw EmptyTrajectory("l2_norm: need at least two samples");
  MetricsRecord rec;
  rec.m = traj.m;
  rec.per_agent_l2sq = Vec::Zero(traj.m);
  for (size_t k = 0; k + 1 < traj.t.size(); ++k) {
    const double dt = traj.t[k + 1] - traj.t[k];
    rec.per_agent_l2sq +=
        0.5 * dt *
        (traj.e.row(k).array().square() + traj.e.row(k + 1).array().square())
            .matrix()
            .transpose();
  }
  rec.l2_squared = rec.per_agent_l2sq.sum();
  rec.l2 = std::sqrt(rec.l2_squared);
  return rec;
}

double linf_norm(const Trajectory& traj) {
  if (traj.t.empty() || traj.e.rows() == 0)
    throw EmptyTrajectory("linf_norm: no samples");
  return traj.e.cwiseAbs().maxCoeff();
}

MetricsRecord make_metrics(const Trajectory& traj, const std::string& topology,
                           const std::string& tuner, long seed) {
  MetricsRecord rec = l2_norm(traj);
  rec.topology = topology;
  rec.tuner = tuner;
  rec.linf = linf_norm(traj);
  rec.horizon = traj.t.back();
  rec.step = traj.h;
  rec.seed = seed;
  return rec;
}

std::string aggregate_table(const std::vector<MetricsRecord>& records) {
  std::string out =
      "topology, m, tuner, l2_squared, l2, linf, horizon, step, seed\n";
  for (const auto& r : records) {
    out += r.topology;
    out += ", " + std::to_string(r.m);
    out += ", " + r.tuner;
    out += ", " + format_g9(r.l2_squared);
    out += ", " + format_g9(r.l2);
    out += ", " + format_g9(r.linf);
    out += ", " + format_g9(r.horizon);
    out += ", " + format_g9(r.step);
    out += ", " + std::to_string(r.seed);
    out += "\n";
  }
  return out;
}

}  // namespace lfsync
