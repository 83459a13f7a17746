#include "lfsync/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lfsync/errors.hpp"

namespace lfsync {

std::string to_string(Topology t) {
  switch (t) {
    case Topology::star_like: return "star_like";
    case Topology::cyclic_like: return "cyclic_like";
    case Topology::path: return "path";
    case Topology::custom: return "custom";
  }
  return "?";
}

Topology topology_from_string(const std::string& s) {
  if (s == "star_like" || s == "star") return Topology::star_like;
  if (s == "cyclic_like" || s == "cyclic") return Topology::cyclic_like;
  if (s == "path") return Topology::path;
  if (s == "custom") return Topology::custom;
  throw ParseError("unknown topology '" + s + "'");
}

static void check_sums(const NetworkSpec& spec) {
  std::vector<double> sum(spec.m, 0.0);
  for (const auto& e : spec.follower_edges) {
    if (e.i < 0 || e.i >= spec.m || e.j < 0 || e.j >= spec.m)
      throw DimensionMismatch("edge index out of range");
    if (e.i == e.j) throw WeightPolicyViolation("self-edge");
    if (e.w <= 0.0) throw WeightPolicyViolation("non-positive edge weight");
    sum[e.i] += e.w;
  }
  for (const auto& e : spec.leader_edges) {
    if (e.i < 0 || e.i >= spec.m)
      throw DimensionMismatch("leader edge index out of range");
    if (e.w <= 0.0) throw WeightPolicyViolation("non-positive leader weight");
    sum[e.i] += e.w;
  }
  for (int i = 0; i < spec.m; ++i)
    if (std::abs(sum[i] - 1.0) > 1e-12)
      throw WeightPolicyViolation("incoming weights of agent " +
                                  std::to_string(i + 1) + " sum to " +
                                  std::to_string(sum[i]));
}

NetworkSpec build_topology(Topology kind, int m, WeightPolicy policy) {
  if (m < 1) throw InvalidCount("agent count must be >= 1");
  NetworkSpec spec;
  spec.m = m;
  spec.topology = kind;
  spec.label = to_string(kind);
  if (m == 1) {
    spec.leader_edges.push_back({0, 1.0});
    check_sums(spec);
    return spec;
  }
  switch (kind) {
    case Topology::star_like: {
      for (int i = 0; i < m; ++i) {
        spec.leader_edges.push_back({i, 0.5});
        std::set<int> nb{(i + m - 1) % m, (i + 1) % m};
        for (int j : nb)
          spec.follower_edges.push_back({i, j, 0.5 / double(nb.size())});
      }
      break;
    }
    case Topology::path: {
      spec.leader_edges.push_back({0, 1.0});
      for (int i = 1; i < m; ++i) spec.follower_edges.push_back({i, i - 1, 1.0});
      break;
    }
    case Topology::cyclic_like: {
      // Bidirectional ring, leader attached at agent 1 only; the deepest
      // q-levels sit at the agents opposite the leader.
      const double w = policy.cyclic_leader_weight;
      if (!(w > 0.0 && w <= 1.0))
        throw WeightPolicyViolation("cyclic leader weight must be in (0, 1]");
      spec.leader_edges.push_back({0, w});
      for (int i = 0; i < m; ++i) {
        std::set<int> nb{(i + m - 1) % m, (i + 1) % m};
        const double budget = i == 0 ? 1.0 - w : 1.0;
        if (budget <= 0.0) continue;
        for (int j : nb)
          spec.follower_edges.push_back({i, j, budget / double(nb.size())});
      }
      break;
    }
    case Topology::custom:
      throw ConfigInvalid("custom topology requires an explicit edge list");
  }
  check_sums(spec);
  return spec;
}

NetworkSpec random9_preset() {
  NetworkSpec spec;
  spec.m = 9;
  spec.topology = Topology::custom;
  spec.label = "random9";
  for (int i = 0; i < 3; ++i) {
    spec.leader_edges.push_back({i, 0.5});
    for (int j = 0; j < 3; ++j)
      if (j != i) spec.follower_edges.push_back({i, j, 0.25});
  }
  spec.follower_edges.push_back({3, 0, 0.75});
  spec.follower_edges.push_back({3, 4, 0.25});
  spec.follower_edges.push_back({4, 1, 0.75});
  spec.follower_edges.push_back({4, 5, 0.25});
  spec.follower_edges.push_back({5, 2, 0.75});
  spec.follower_edges.push_back({5, 3, 0.25});
  spec.follower_edges.push_back({6, 3, 0.75});
  spec.follower_edges.push_back({6, 7, 0.25});
  spec.follower_edges.push_back({7, 4, 0.75});
  spec.follower_edges.push_back({7, 8, 0.25});
  spec.follower_edges.push_back({8, 5, 0.75});
  spec.follower_edges.push_back({8, 6, 0.25});
  check_sums(spec);
  return spec;
}

static std::vector<int> bfs_levels(const Mat& A_m, const Vec& leader_w) {
  const int m = static_cast<int>(A_m.rows());
  std::vector<int> q(m, -1);
  std::vector<int> frontier;
  for (int i = 0; i < m; ++i)
    if (leader_w(i) > 0.0) {
      q[i] = 1;
      frontier.push_back(i);
    }
  // information flows j -> i when agent i measures j (A_m(i, j) > 0)
  for (size_t head = 0; head < frontier.size(); ++head) {
    const int j = frontier[head];
    for (int i = 0; i < m; ++i)
      if (q[i] == -1 && A_m(i, j) > 0.0) {
        q[i] = q[j] + 1;
        frontier.push_back(i);
      }
  }
  return q;
}

NetworkMatrices assemble_matrices(const NetworkSpec& spec) {
  check_sums(spec);
  const int m = spec.m;
  NetworkMatrices mats;
  mats.A_m = Mat::Zero(m, m);
  for (const auto& e : spec.follower_edges) {
    if (mats.A_m(e.i, e.j) != 0.0)
      throw WeightPolicyViolation("duplicate edge");
    mats.A_m(e.i, e.j) = e.w;
  }
  Vec lw = Vec::Zero(m);
  for (const auto& e : spec.leader_edges) {
    if (lw(e.i) != 0.0) throw WeightPolicyViolation("duplicate leader edge");
    lw(e.i) = e.w;
  }
  mats.A_ell = lw.asDiagonal();
  Vec deg = mats.A_m.rowwise().sum() + lw;
  mats.D = deg.asDiagonal();
  mats.L_m = mats.D - mats.A_m;
  mats.q_level = bfs_levels(mats.A_m, lw);
  for (int i = 0; i < m; ++i)
    if (mats.q_level[i] < 0)
      throw UnreachableAgent("agent " + std::to_string(i + 1) +
                             " has no directed path from the leader");
  return mats;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

ValidationReport validate_network(const NetworkMatrices& mats) {
  ValidationReport rep;
  const int m = static_cast<int>(mats.L_m.rows());
  const Vec ones = Vec::Ones(m);

  const double bal = ((mats.L_m - mats.A_ell) * ones).cwiseAbs().maxCoeff();
  rep.checks.push_back({"balance residual", bal <= 1e-12, bal,
                        "|(L_m - A_ell) 1|_inf = " + std::to_string(bal)});

  Eigen::EigenSolver<Mat> es(mats.L_m, false);
  double min_re = es.eigenvalues().real().minCoeff();
  rep.checks.push_back({"L_m spectrum", min_re > 0.0, min_re,
                        "min Re(eig) = " + std::to_string(min_re)});

  const Vec d = mats.A_ell.diagonal();
  bool in_range = d.minCoeff() >= 0.0 && d.maxCoeff() <= 1.0;
  bool nonzero = d.maxCoeff() > 0.0;
  rep.checks.push_back({"leader weights in [0,1]", in_range, d.maxCoeff(), ""});
  rep.checks.push_back({"leader weight nonzero", nonzero, d.maxCoeff(), ""});

  const double dres = (mats.D - Mat::Identity(m, m)).cwiseAbs().maxCoeff();
  rep.checks.push_back({"unit incoming weights", dres <= 1e-12, dres,
                        "|D - I|_inf = " + std::to_string(dres)});

  auto q = bfs_levels(mats.A_m, d);
  bool reachable = std::all_of(q.begin(), q.end(), [](int v) { return v > 0; });
  rep.checks.push_back({"leader reachability", reachable,
                        reachable ? 1.0 : 0.0, ""});
  return rep;
}

Vec error_signal(const NetworkMatrices& mats, const Vec& y,
                 const Vec& y_leader) {
  const int m = static_cast<int>(mats.L_m.rows());
  if (y.size() != m) throw DimensionMismatch("error_signal: y size");
  Vec yl;
  if (y_leader.size() == m)
    yl = y_leader;
  else if (y_leader.size() == 1)
    yl = Vec::Constant(m, y_leader(0));
  else
    throw DimensionMismatch("error_signal: y_leader size");
  return mats.L_m * y - mats.A_ell * yl;
}

NetworkSpec load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open topology file '" + path + "'");
  NetworkSpec spec;
  spec.topology = Topology::custom;
  spec.label = "custom";
  std::set<std::pair<int, int>> seen;
  std::set<int> leader_seen;
  int max_idx = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string src, dst;
    double w;
    if (!(ls >> src)) continue;  // blank line
    if (!(ls >> dst >> w))
      throw ParseError("topology file line " + std::to_string(lineno) +
                       ": expected 'src dst weight'");
    std::string extra;
    if (ls >> extra)
      throw ParseError("topology file line " + std::to_string(lineno) +
                       ": trailing token '" + extra + "'");
    if (dst == "L")
      throw ParseError("topology file line " + std::to_string(lineno) +
                       ": leader cannot be a destination");
    int di;
    try {
      di = std::stoi(dst);
    } catch (...) {
      throw ParseError("topology file line " + std::to_string(lineno) +
                       ": bad agent index '" + dst + "'");
    }
    if (di < 1)
      throw ParseError("topology file line " + std::to_string(lineno) +
                       ": agent indices are 1-based");
    max_idx = std::max(max_idx, di);
    if (src == "L") {
      if (!leader_seen.insert(di).second)
        throw ParseError("topology file line " + std::to_string(lineno) +
                         ": duplicate leader edge");
      spec.leader_edges.push_back({di - 1, w});
    } else {
      int si;
      try {
        si = std::stoi(src);
      } catch (...) {
        throw ParseError("topology file line " + std::to_string(lineno) +
                         ": bad agent index '" + src + "'");
      }
      if (si < 1)
        throw ParseError("topology file line " + std::to_string(lineno) +
                         ": agent indices are 1-based");
      max_idx = std::max(max_idx, si);
      if (!seen.insert({di, si}).second)
        throw ParseError("topology file line " + std::to_string(lineno) +
                         ": duplicate edge");
      // record "src dst w": dst measures src
      spec.follower_edges.push_back({di - 1, si - 1, w});
    }
  }
  if (max_idx == 0) throw ParseError("topology file has no edges");
  spec.m = max_idx;
  check_sums(spec);
  return spec;
}

}  // namespace lfsync
