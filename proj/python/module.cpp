#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lfsync/config.hpp"
#include "lfsync/manifest.hpp"
#include "lfsync/matching.hpp"
#include "lfsync/network.hpp"
#include "lfsync/scenario.hpp"
#include "lfsync/sim.hpp"
#include "lfsync/sweep.hpp"

namespace py = pybind11;
using namespace lfsync;

namespace {

TransferFunction tf_from(const std::vector<double>& num,
                         const std::vector<double>& den, double gain) {
  TransferFunction tf = make_tf(Polynomial(num), Polynomial(den));
  tf.gain *= gain;
  return tf;
}

NetworkSpec named_network(const std::string& topology, int m,
                          double cyclic_leader_weight) {
  if (topology == "random9") return random9_preset();
  WeightPolicy policy;
  policy.cyclic_leader_weight = cyclic_leader_weight;
  return build_topology(topology_from_string(topology), m, policy);
}

py::dict solve_gains(const std::vector<double>& num,
                     const std::vector<double>& den, double gain,
                     std::optional<std::vector<double>> d_lambda) {
  const TransferFunction plant = tf_from(num, den, gain);
  const TransferFunction leader = leader_default();
  FilterSpec filter = default_filter(static_cast<int>(den.size()) - 1);
  if (d_lambda) filter.d_lambda = Polynomial(*d_lambda);
  const IdealGains g = solve_ideal_gains(plant, leader, filter);
  py::dict out;
  out["k"] = g.k_star;
  out["psi"] = Vec(g.psi);
  out["phi"] = Vec(g.phi);
  out["tau"] = g.tau;
  out["theta"] = Vec(g.theta_star().transpose());
  out["residual"] = verify_matching(g, plant, leader, filter);
  return out;
}

py::dict build_network_py(const std::string& topology, int m,
                          double cyclic_leader_weight) {
  const NetworkSpec spec = named_network(topology, m, cyclic_leader_weight);
  const NetworkMatrices mats = assemble_matrices(spec);
  py::dict out;
  out["label"] = spec.label.empty() ? to_string(spec.topology) : spec.label;
  out["m"] = spec.m;
  out["L"] = mats.L_m;
  out["A_leader"] = mats.A_ell;
  out["A"] = mats.A_m;
  out["q_level"] = mats.q_level;
  return out;
}

py::tuple validate_network_py(const std::string& topology, int m,
                              double cyclic_leader_weight) {
  const NetworkSpec spec = named_network(topology, m, cyclic_leader_weight);
  const ValidationReport rep = validate_network(assemble_matrices(spec));
  return py::make_tuple(rep.all_pass(), rep.to_text());
}

py::tuple validate_config(const ConfigMap& config) {
  const ValidationReport rep = validate_scenario(scenario_from_config(config));
  return py::make_tuple(rep.all_pass(), rep.to_text());
}

py::dict simulate(const ConfigMap& config, bool keep_trace) {
  const CellResult res = run_config(config, "", "run", keep_trace);
  py::dict out;
  out["ok"] = res.ok;
  out["status"] = res.manifest.status;
  if (!res.ok) out["error"] = res.error;
  out["l2_squared"] = res.metrics.l2_squared;
  out["l2"] = res.metrics.l2;
  out["linf"] = res.metrics.linf;
  out["trace_hash"] = res.manifest.trace_hash;
  out["manifest"] = manifest_json(res.manifest);
  if (keep_trace) out["trace"] = res.trace;
  return out;
}

py::dict run(const ConfigMap& config) {
  const Trajectory traj = integrate(scenario_from_config(config));
  py::dict out;
  out["t"] = traj.t;
  out["y"] = traj.y;
  out["y_leader"] = Vec(traj.y_leader);
  out["e"] = traj.e;
  out["u"] = traj.u;
  out["theta_norm"] = Vec(traj.theta_norm);
  return out;
}

py::dict sweep(const ConfigMap& config,
               const std::vector<std::string>& topologies,
               const std::vector<int>& m_list,
               const std::vector<std::string>& tuners, int workers) {
  SweepGrid grid;
  grid.topologies = topologies;
  grid.m_list = m_list;
  for (const auto& t : tuners) grid.tuners.push_back(tuner_from_string(t));
  const SweepResult res = run_sweep(config, grid, workers);
  py::list cells;
  for (size_t k = 0; k < res.cells.size(); ++k) {
    py::dict cell;
    cell["name"] = res.cells[k].name();
    cell["ok"] = res.results[k].ok;
    if (!res.results[k].ok) cell["error"] = res.results[k].error;
    cell["l2"] = res.results[k].metrics.l2;
    cell["linf"] = res.results[k].metrics.linf;
    cell["trace_hash"] = res.results[k].manifest.trace_hash;
    cells.append(cell);
  }
  py::dict out;
  out["table"] = res.table;
  out["cells"] = cells;
  out["all_ok"] = res.all_ok();
  return out;
}

}  // namespace

PYBIND11_MODULE(lfsync, mod) {
  mod.doc() =
      "Leader-follower synchronization of unknown LTI agents over weighted "
      "digraphs: gain matching, network construction, and deterministic "
      "closed-loop simulation.";

  mod.def("solve_gains", &solve_gains, py::arg("num"), py::arg("den"),
          py::arg("gain") = 1.0, py::arg("d_lambda") = py::none(),
          "Ideal matching gains of a plant (ascending coefficients) against "
          "the built-in reference model; returns k, psi, phi, tau, theta and "
          "the closed-loop matching residual.");
  mod.def(
      "family_plant",
      [](double k) {
        const TransferFunction tf = family_plant(k);
        py::dict out;
        out["num"] = tf.num.c;
        out["den"] = tf.den.c;
        out["gain"] = tf.gain;
        return out;
      },
      py::arg("k"), "Benchmark family plant with high-frequency gain k.");
  mod.def(
      "leader",
      [] {
        const TransferFunction tf = leader_default();
        py::dict out;
        out["num"] = tf.num.c;
        out["den"] = tf.den.c;
        out["gain"] = tf.gain;
        return out;
      },
      "Built-in reference model.");

  mod.def("build_network", &build_network_py, py::arg("topology"),
          py::arg("m"), py::arg("cyclic_leader_weight") = 0.5,
          "Build a named topology (star, cyclic, path, random9) and return "
          "its matrices and breadth-first levels.");
  mod.def("validate_network", &validate_network_py, py::arg("topology"),
          py::arg("m"), py::arg("cyclic_leader_weight") = 0.5,
          "Run the digraph checks; returns (all_pass, report_text).");

  mod.def("validate", &validate_config, py::arg("config"),
          "Run every scenario assumption check on a key/value config; "
          "returns (all_pass, report_text).");
  mod.def("simulate", &simulate, py::arg("config"),
          py::arg("keep_trace") = false,
          "Run one scenario from a key/value config; returns summary "
          "metrics, the run manifest (JSON) and the trace hash.");
  mod.def("run", &run, py::arg("config"),
          "Run one scenario and return the sampled trajectory arrays.");
  mod.def("sweep", &sweep, py::arg("config"), py::arg("topologies"),
          py::arg("m_list"), py::arg("tuners"), py::arg("workers") = 1,
          "Run a topology/size/tuner grid; returns the metrics table and "
          "per-cell summaries.");
}
