#include "lfsync/scenario.hpp"

#include <cmath>

#include "lfsync/errors.hpp"

namespace lfsync {

std::string to_string(TunerKind k) {
  switch (k) {
    case TunerKind::gradient: return "gradient";
    case TunerKind::ht1: return "ht1";
    case TunerKind::ht2: return "ht2";
  }
  return "?";
}

TunerKind tuner_from_string(const std::string& s) {
  if (s == "gradient") return TunerKind::gradient;
  if (s == "ht1") return TunerKind::ht1;
  if (s == "ht2") return TunerKind::ht2;
  throw ParseError("unknown tuner '" + s + "'");
}

std::string to_string(SimMode m) {
  switch (m) {
    case SimMode::full: return "full";
    case SimMode::gain_only: return "gain_only";
    case SimMode::matched: return "matched";
  }
  return "?";
}

SimMode mode_from_string(const std::string& s) {
  if (s == "full") return SimMode::full;
  if (s == "gain_only") return SimMode::gain_only;
  if (s == "matched") return SimMode::matched;
  throw ParseError("unknown mode '" + s + "'");
}

// Per-kind operating points calibrated on the benchmark family; the
// normalization weights keep beta*N*q_mult inside the explicit-integrator
// stability region at the default step.
TunerDefaults tuner_defaults(TunerKind k) {
  switch (k) {
    case TunerKind::gradient: return {1.0, 1.0, 1.0};
    case TunerKind::ht1: return {40.0, 2.0, 0.01};
    case TunerKind::ht2: return {300.0, 30.0, 0.005};
  }
  return {1.0, 1.0, 1.0};
}

ScenarioConfig::ScenarioConfig() : leader(leader_default()) {
  network.m = 3;
}

TransferFunction leader_default() {
  return make_tf(Polynomial{3.0, 3.0}, Polynomial{6.0, 5.0, 1.0});
}

TransferFunction family_plant(double k) {
  const Polynomial num{k + 4.0, 1.0};
  const Polynomial den =
      poly_convolve(Polynomial{-1.0 - k, 1.0}, Polynomial{-2.0 - k, 1.0});
  return make_tf(num, den);
}

double family_k(int m, int i) {
  switch (m) {
    case 1: return 9.0 * i;
    case 3: return 4.0 * i - 3.0;
    case 5: return 2.0 * i - 1.0;
    case 7: return (4.0 * i - 1.0) / 3.0;
    case 9: return static_cast<double>(i);
    case 11: return (4.0 * i + 1.0) / 5.0;
    case 13: return (2.0 * i + 1.0) / 3.0;
    default:
      throw ConfigInvalid("no family schedule for m = " + std::to_string(m));
  }
}

std::vector<TransferFunction> family_plants(int m) {
  std::vector<TransferFunction> out;
  out.reserve(m);
  for (int i = 1; i <= m; ++i) out.push_back(family_plant(family_k(m, i)));
  return out;
}

static NetworkSpec resolve_network(const ScenarioConfig& cfg) {
  if (!cfg.network.follower_edges.empty() || !cfg.network.leader_edges.empty())
    return cfg.network;
  if (cfg.network.label == "random9") {
    if (cfg.network.m != 9)
      throw ConfigInvalid("random9 preset requires m = 9");
    return random9_preset();
  }
  if (cfg.network.topology == Topology::custom)
    throw ConfigInvalid("custom topology requires an explicit edge list");
  return build_topology(cfg.network.topology, cfg.network.m, cfg.weights);
}

PreparedScenario prepare_scenario(const ScenarioConfig& cfg) {
  if (cfg.h <= 0.0 || cfg.T < cfg.h)
    throw ConfigInvalid("horizon/step must satisfy h > 0, T >= h");
  if (cfg.stride < 1) throw ConfigInvalid("stride must be >= 1");
  PreparedScenario ps;
  ps.cfg = cfg;
  ps.net_spec = resolve_network(cfg);
  ps.mats = assemble_matrices(ps.net_spec);
  const int m = ps.net_spec.m;
  ps.plants = cfg.plants.empty() ? family_plants(m) : cfg.plants;
  if (static_cast<int>(ps.plants.size()) != m)
    throw ConfigInvalid("plant count must equal agent count");
  ps.n = ps.cfg.leader.den.degree();
  for (const auto& p : ps.plants) {
    if (p.den.degree() != ps.n)
      throw ConfigInvalid("plant order must equal leader order");
    if (relative_degree(p) != 1)
      throw ConfigInvalid("plants must have relative degree 1");
  }
  ps.q = ps.n - 1;
  ps.filter = cfg.filter ? *cfg.filter : default_filter(ps.n);
  if (ps.filter.d_lambda.degree() != ps.q)
    throw ConfigInvalid("filter polynomial degree must be n - 1");
  ps.cfg.filter = ps.filter;
  ps.leader_ss = realize_ccf(ps.cfg.leader);
  ps.plant_ss.reserve(m);
  ps.gains.reserve(m);
  for (const auto& p : ps.plants) {
    ps.plant_ss.push_back(realize_ccf(p));
    ps.gains.push_back(solve_ideal_gains(p, ps.cfg.leader, ps.filter));
  }
  ps.p = cfg.mode == SimMode::gain_only ? 1 : 2 * ps.n;

  TunerConfig& tc = ps.cfg.tuner;
  const TunerDefaults td = tuner_defaults(tc.kind);
  if (tc.gamma < 0.0) tc.gamma = td.gamma;
  if (tc.beta < 0.0) tc.beta = td.beta;
  if (tc.mu < 0.0) tc.mu = td.mu;
  if (tc.gamma <= 0.0 || tc.beta <= 0.0)
    throw ConfigInvalid("tuner gains must be positive");
  if (tc.q_base < 1.0) throw ConfigInvalid("q scaling base must be >= 1");
  tc.sign_kp = Vec(m);
  for (int i = 0; i < m; ++i)
    tc.sign_kp(i) = ps.plants[i].gain >= 0.0 ? 1.0 : -1.0;
  tc.q_mult = Vec(m);
  for (int i = 0; i < m; ++i) {
    const int ql = std::min(ps.mats.q_level[i], tc.q_cap);
    tc.q_mult(i) = std::pow(tc.q_base, ql - 1);
  }

  auto fix_ic = [](Vec& v, int len, const char* who) {
    if (v.size() == 0)
      v = Vec::Zero(len);
    else if (v.size() == 1)
      v = Vec::Constant(len, v(0));
    else if (v.size() != len)
      throw ConfigInvalid(std::string("initial condition length: ") + who);
  };
  fix_ic(ps.cfg.x0, ps.n * m, "x");
  fix_ic(ps.cfg.z0, ps.q * m, "z");
  fix_ic(ps.cfg.w0, ps.q * m, "omega");
  fix_ic(ps.cfg.leader0, ps.n, "leader");
  fix_ic(ps.cfg.tuner0, ps.p * m, "tuner");
  fix_ic(ps.cfg.tuner_aux0, ps.p * m, "tuner aux");

  auto fix_dist = [m](Vec& v) {
    if (v.size() == 0)
      v = Vec::Zero(m);
    else if (v.size() == 1)
      v = Vec::Constant(m, v(0));
    else if (v.size() != m)
      throw ConfigInvalid("disturbance length must be 1 or m");
  };
  fix_dist(ps.cfg.disturbance.nu_u);
  fix_dist(ps.cfg.disturbance.nu_y);

  if (ps.cfg.reference.kind == ReferenceSpec::Kind::square ||
      ps.cfg.reference.kind == ReferenceSpec::Kind::step) {
    const double sup_nu = std::max(
        ps.cfg.disturbance.nu_u.cwiseAbs().maxCoeff(),
        ps.cfg.disturbance.nu_y.cwiseAbs().maxCoeff());
    if (ps.cfg.reference.amplitude <= 0.0)
      throw ConfigInvalid("reference amplitude must be positive");
    (void)sup_nu;  // design condition sup(nu) < amplitude is advisory
  }
  return ps;
}

ValidationReport validate_scenario(const ScenarioConfig& cfg) {
  ValidationReport rep;
  const int m = cfg.network.m;
  std::vector<TransferFunction> plants;
  try {
    plants = cfg.plants.empty() ? family_plants(m) : cfg.plants;
  } catch (const std::exception& e) {
    rep.checks.push_back({"plant set", false, 0.0, e.what()});
    return rep;
  }
  const int n = cfg.leader.den.degree();
  for (size_t i = 0; i < plants.size(); ++i) {
    const auto& p = plants[i];
    const std::string tag = "plant[" + std::to_string(i + 1) + "]";
    bool zeros_ok = false;
    try {
      zeros_ok = is_hurwitz(p.num);
    } catch (...) {
    }
    rep.checks.push_back({tag + " zeros hurwitz", zeros_ok, 0.0, ""});
    rep.checks.push_back(
        {tag + " relative degree 1", relative_degree(p) == 1, 0.0, ""});
    rep.checks.push_back(
        {tag + " order matches leader", p.den.degree() == n, 0.0, ""});
    rep.checks.push_back({tag + " gain nonzero", p.gain != 0.0, 0.0, ""});
  }
  bool spr = false;
  try {
    spr = is_spr(cfg.leader);
  } catch (...) {
  }
  rep.checks.push_back({"leader strictly positive real", spr, 0.0, ""});
  try {
    const NetworkMatrices mats = assemble_matrices(resolve_network(cfg));
    auto net = validate_network(mats);
    rep.checks.insert(rep.checks.end(), net.checks.begin(), net.checks.end());
  } catch (const std::exception& e) {
    rep.checks.push_back({"network assembly", false, 0.0, e.what()});
  }
  return rep;
}

}  // namespace lfsync
