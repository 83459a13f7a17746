#pragma once

#include <string>
#include <vector>

#include "lfsync/poly.hpp"

namespace lfsync {

enum class Topology { star_like, cyclic_like, path, custom };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

struct FollowerEdge {
  int i;  // measuring agent (0-based)
  int j;  // measured agent
  double w;
};

struct LeaderEdge {
  int i;
  double w;
};

// Weighted digraph over m followers plus the leader. Incoming weights of each
// agent (followers + leader) sum to 1; no self-edges; weights positive.
struct NetworkSpec {
  int m = 0;
  Topology topology = Topology::star_like;
  std::string label;  // output key; presets override (e.g. "random9")
  std::vector<FollowerEdge> follower_edges;
  std::vector<LeaderEdge> leader_edges;
  long seed = 0;
};

struct NetworkMatrices {
  Mat L_m;    // D - A_m
  Mat A_ell;  // diagonal leader weights
  Mat A_m;    // adjacency, A_m(i,j) = w_ij
  Mat D;      // diagonal incoming-weight sums (identity on valid specs)
  std::vector<int> q_level;  // breadth-first distance from the leader
};

struct WeightPolicy {
  double cyclic_leader_weight = 0.5;  // w_1l for the cyclic construction
};

NetworkSpec build_topology(Topology kind, int m, WeightPolicy policy = {});

// Nine-agent preset with q-levels (1,1,1,2,2,2,3,3,3): three agents connect
// to the leader (0.5) and to each other (0.25 each); deeper agents weight
// their closest-to-leader neighbor 0.75 and one same-level peer 0.25.
NetworkSpec random9_preset();

NetworkMatrices assemble_matrices(const NetworkSpec& spec);

struct ValidationCheck {
  std::string name;
  bool pass;
  double value;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

ValidationReport validate_network(const NetworkMatrices& mats);

// L_m * y - A_ell * y_leader (y_leader replicated if scalar source).
Vec error_signal(const NetworkMatrices& mats, const Vec& y,
                 const Vec& y_leader);

// Edge list file: one record per line `src dst weight`, leader token `L`
// allowed as src only; dst measures src. Strict parse, duplicates rejected.
NetworkSpec load_topology_file(const std::string& path);

}  // namespace lfsync
