#include "lfsync/config.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"

namespace lfsync {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return d;
  } catch (...) {
    throw ParseError("config: " + key + ": not a number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return d;
  } catch (...) {
    throw ParseError("config: " + key + ": not an integer: '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return d;
  } catch (...) {
    throw ParseError("config: " + key + ": not an integer: '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& tok : split(v, ','))
    out.push_back(to_double(key, tok));
  return out;
}

Vec to_vec(const std::string& key, const std::string& v) {
  const auto xs = to_list(key, v);
  Vec out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out(i) = xs[i];
  return out;
}

Polynomial to_poly(const std::string& key, const std::string& v) {
  return Polynomial(to_list(key, v));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list_text(const Vec& v) {
  // scalar echo when every entry matches; else the full list
  if (v.size() > 0 && (v.array() == v(0)).all()) return fmt17(v(0));
  std::string out;
  for (int i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + fmt17(v(i));
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + fmt17(v[i]);
  return out;
}

std::string poly_text(const Polynomial& p) {
  std::string out;
  for (size_t i = 0; i < p.c.size(); ++i)
    out += (i ? ", " : "") + fmt17(p.c[i]);
  return out;
}

// Edge record list "L 1 0.5; 1 2 1": same token syntax as topology files,
// leader token L as source only, dst measures src, ids 1-based.
void parse_edges(const std::string& key, const std::string& v,
                 NetworkSpec& spec) {
  int max_id = 0;
  for (const auto& rec : split(v, ';')) {
    if (rec.empty()) continue;
    std::istringstream ss(rec);
    std::string src, dst;
    double w = 0.0;
    if (!(ss >> src >> dst >> w))
      throw ParseError("config: " + key + ": bad edge record '" + rec + "'");
    std::string extra;
    if (ss >> extra)
      throw ParseError("config: " + key + ": bad edge record '" + rec + "'");
    if (dst == "L")
      throw ParseError("config: " + key + ": edges into the leader");
    const int di = to_int(key, dst);
    if (di < 1) throw ParseError("config: " + key + ": agent ids are 1-based");
    max_id = std::max(max_id, di);
    if (src == "L") {
      spec.leader_edges.push_back({di - 1, w});
    } else {
      const int si = to_int(key, src);
      if (si < 1)
        throw ParseError("config: " + key + ": agent ids are 1-based");
      max_id = std::max(max_id, si);
      spec.follower_edges.push_back({di - 1, si - 1, w});
    }
  }
  if (spec.m == 0) spec.m = max_id;
  if (max_id > spec.m)
    throw ParseError("config: " + key + ": edge references agent " +
                     std::to_string(max_id) + " but network.m = " +
                     std::to_string(spec.m));
}

std::string edges_text(const NetworkSpec& spec) {
  std::string out;
  bool first = true;
  for (const auto& e : spec.leader_edges) {
    out += (first ? "" : "; ");
    out += "L " + std::to_string(e.i + 1) + " " + fmt17(e.w);
    first = false;
  }
  for (const auto& e : spec.follower_edges) {
    out += (first ? "" : "; ");
    out += std::to_string(e.j + 1) + " " + std::to_string(e.i + 1) + " " +
           fmt17(e.w);
    first = false;
  }
  return out;
}

bool is_plant_item_key(const std::string& key) {
  // plants.<index>.num|den|gain
  if (key.rfind("plants.", 0) != 0) return false;
  const size_t dot = key.find('.', 7);
  if (dot == std::string::npos || dot == 7) return false;
  for (size_t i = 7; i < dot; ++i)
    if (!std::isdigit(static_cast<unsigned char>(key[i]))) return false;
  const std::string field = key.substr(dot + 1);
  return field == "num" || field == "den" || field == "gain";
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "network.topology", "network.m", "network.file", "network.edges",
      "network.cyclic_leader_weight",
      "plants.kind", "plants.num", "plants.den", "plants.gain",
      "leader.num", "leader.den", "leader.gain",
      "filter.d_lambda",
      "tuner.kind", "tuner.gamma", "tuner.beta", "tuner.mu", "tuner.q_base",
      "tuner.q_cap",
      "reference.kind", "reference.amplitude", "reference.period",
      "reference.amplitudes", "reference.frequencies",
      "disturbance.nu_u", "disturbance.nu_y",
      "sim.T", "sim.h", "sim.stride", "sim.mode", "sim.seed",
      "init.x", "init.z", "init.omega", "init.leader", "init.tuner",
      "init.tuner_aux",
      "sweep.topologies", "sweep.m", "sweep.tuners",
  };
  return keys;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(lineno) +
                       ": empty key");
    if (map.count(key))
      throw ParseError("config line " + std::to_string(lineno) +
                       ": duplicate key '" + key + "'");
    map[key] = value;
  }
  return map;
}

ConfigMap parse_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

ScenarioConfig scenario_from_config(const ConfigMap& map) {
  for (const auto& [key, value] : map) {
    (void)value;
    if (!known_keys().count(key) && !is_plant_item_key(key))
      throw ParseError("config: unknown key '" + key + "'");
  }
  auto has = [&](const std::string& k) { return map.count(k) != 0; };
  auto get = [&](const std::string& k) { return map.at(k); };

  ScenarioConfig cfg;
  if (has("network.m")) cfg.network.m = to_int("network.m", get("network.m"));
  if (has("network.cyclic_leader_weight"))
    cfg.weights.cyclic_leader_weight = to_double(
        "network.cyclic_leader_weight", get("network.cyclic_leader_weight"));
  if (has("network.topology")) {
    const std::string t = get("network.topology");
    if (t == "random9") {
      cfg.network.topology = Topology::custom;
      cfg.network.label = "random9";
      if (!has("network.m")) cfg.network.m = 9;
    } else {
      cfg.network.topology = topology_from_string(t);
    }
  }
  if (has("network.file")) {
    const NetworkSpec loaded = load_topology_file(get("network.file"));
    const int m = cfg.network.m;
    cfg.network = loaded;
    if (has("network.m") && m != loaded.m)
      throw ParseError("config: network.m = " + std::to_string(m) +
                       " but the edge file defines " +
                       std::to_string(loaded.m) + " agents");
  }
  if (has("network.edges")) {
    if (has("network.file"))
      throw ParseError("config: network.edges and network.file are exclusive");
    cfg.network.topology = Topology::custom;
    cfg.network.label = "custom";
    if (!has("network.m")) cfg.network.m = 0;  // infer from the edge list
    parse_edges("network.edges", get("network.edges"), cfg.network);
  }

  const std::string plants_kind = has("plants.kind") ? get("plants.kind")
                                                     : "family";
  if (plants_kind == "family") {
    // plant list stays empty; prepare_scenario builds the benchmark family
    for (const auto& [key, value] : map) {
      (void)value;
      if (key == "plants.num" || key == "plants.den" ||
          key == "plants.gain" || is_plant_item_key(key))
        throw ParseError("config: " + key + " requires plants.kind");
    }
  } else if (plants_kind == "uniform") {
    if (!has("plants.num") || !has("plants.den"))
      throw ParseError("config: plants.kind = uniform needs plants.num/den");
    const double g =
        has("plants.gain") ? to_double("plants.gain", get("plants.gain"))
                           : 1.0;
    const TransferFunction tf =
        make_tf(poly_scale(to_poly("plants.num", get("plants.num")), g),
                to_poly("plants.den", get("plants.den")));
    cfg.plants.assign(std::max(cfg.network.m, 1), tf);
  } else if (plants_kind == "list") {
    for (int i = 1;; ++i) {
      const std::string base = "plants." + std::to_string(i) + ".";
      if (!has(base + "num")) {
        if (i == 1)
          throw ParseError("config: plants.kind = list needs plants.1.num");
        break;
      }
      if (!has(base + "den"))
        throw ParseError("config: missing " + base + "den");
      const double g = has(base + "gain")
                           ? to_double(base + "gain", get(base + "gain"))
                           : 1.0;
      cfg.plants.push_back(
          make_tf(poly_scale(to_poly(base + "num", get(base + "num")), g),
                  to_poly(base + "den", get(base + "den"))));
    }
  } else {
    throw ParseError("config: plants.kind must be family, uniform or list");
  }

  if (has("leader.num") != has("leader.den"))
    throw ParseError("config: leader.num and leader.den go together");
  if (has("leader.num")) {
    const double g =
        has("leader.gain") ? to_double("leader.gain", get("leader.gain"))
                           : 1.0;
    cfg.leader = make_tf(poly_scale(to_poly("leader.num", get("leader.num")), g),
                         to_poly("leader.den", get("leader.den")));
  } else if (has("leader.gain")) {
    throw ParseError("config: leader.gain without leader.num/den");
  }

  if (has("filter.d_lambda")) {
    const Polynomial d = to_poly("filter.d_lambda", get("filter.d_lambda"));
    if (d.degree() < 1 || d.leading() != 1.0)
      throw ParseError("config: filter.d_lambda must be monic, degree >= 1");
    FilterSpec f;
    f.d_lambda = d;
    f.Lambda = companion(d);
    f.theta = Vec::Zero(d.degree());
    f.theta(d.degree() - 1) = 1.0;
    f.n_lambda = Polynomial(std::vector<double>(d.degree(), 1.0));
    cfg.filter = f;
  }

  if (has("tuner.kind"))
    cfg.tuner.kind = tuner_from_string(get("tuner.kind"));
  if (has("tuner.gamma"))
    cfg.tuner.gamma = to_double("tuner.gamma", get("tuner.gamma"));
  if (has("tuner.beta"))
    cfg.tuner.beta = to_double("tuner.beta", get("tuner.beta"));
  if (has("tuner.mu")) cfg.tuner.mu = to_double("tuner.mu", get("tuner.mu"));
  if (has("tuner.q_base"))
    cfg.tuner.q_base = to_double("tuner.q_base", get("tuner.q_base"));
  if (has("tuner.q_cap"))
    cfg.tuner.q_cap = to_int("tuner.q_cap", get("tuner.q_cap"));

  if (has("reference.kind")) {
    const std::string k = get("reference.kind");
    if (k == "step")
      cfg.reference.kind = ReferenceSpec::Kind::step;
    else if (k == "square")
      cfg.reference.kind = ReferenceSpec::Kind::square;
    else if (k == "sine_sum")
      cfg.reference.kind = ReferenceSpec::Kind::sine_sum;
    else
      throw ParseError("config: unknown reference.kind '" + k + "'");
  }
  if (has("reference.amplitude"))
    cfg.reference.amplitude =
        to_double("reference.amplitude", get("reference.amplitude"));
  if (has("reference.period"))
    cfg.reference.period =
        to_double("reference.period", get("reference.period"));
  if (has("reference.amplitudes"))
    cfg.reference.amplitudes =
        to_list("reference.amplitudes", get("reference.amplitudes"));
  if (has("reference.frequencies"))
    cfg.reference.frequencies =
        to_list("reference.frequencies", get("reference.frequencies"));
  if (cfg.reference.kind == ReferenceSpec::Kind::sine_sum &&
      cfg.reference.amplitudes.size() != cfg.reference.frequencies.size())
    throw ParseError(
        "config: reference.amplitudes and reference.frequencies lengths");

  if (has("disturbance.nu_u"))
    cfg.disturbance.nu_u = to_vec("disturbance.nu_u", get("disturbance.nu_u"));
  if (has("disturbance.nu_y"))
    cfg.disturbance.nu_y = to_vec("disturbance.nu_y", get("disturbance.nu_y"));

  if (has("sim.T")) cfg.T = to_double("sim.T", get("sim.T"));
  if (has("sim.h")) cfg.h = to_double("sim.h", get("sim.h"));
  if (has("sim.stride")) cfg.stride = to_int("sim.stride", get("sim.stride"));
  if (has("sim.seed")) cfg.seed = to_long("sim.seed", get("sim.seed"));
  if (has("sim.mode")) cfg.mode = mode_from_string(get("sim.mode"));

  if (has("init.x")) cfg.x0 = to_vec("init.x", get("init.x"));
  if (has("init.z")) cfg.z0 = to_vec("init.z", get("init.z"));
  if (has("init.omega")) cfg.w0 = to_vec("init.omega", get("init.omega"));
  if (has("init.leader"))
    cfg.leader0 = to_vec("init.leader", get("init.leader"));
  if (has("init.tuner")) cfg.tuner0 = to_vec("init.tuner", get("init.tuner"));
  if (has("init.tuner_aux"))
    cfg.tuner_aux0 = to_vec("init.tuner_aux", get("init.tuner_aux"));

  return cfg;
}

ConfigMap scenario_to_config(const ScenarioConfig& cfg) {
  ConfigMap map;
  map["network.topology"] = cfg.network.label == "random9"
                                ? "random9"
                                : to_string(cfg.network.topology);
  map["network.m"] = std::to_string(cfg.network.m);
  map["network.cyclic_leader_weight"] =
      fmt17(cfg.weights.cyclic_leader_weight);
  if ((!cfg.network.follower_edges.empty() ||
       !cfg.network.leader_edges.empty()) &&
      cfg.network.label != "random9")
    map["network.edges"] = edges_text(cfg.network);

  if (cfg.plants.empty()) {
    map["plants.kind"] = "family";
  } else {
    bool uniform = true;
    for (const auto& p : cfg.plants)
      uniform = uniform && p.num == cfg.plants[0].num &&
                p.den == cfg.plants[0].den && p.gain == cfg.plants[0].gain;
    if (uniform) {
      map["plants.kind"] = "uniform";
      map["plants.num"] = poly_text(cfg.plants[0].num);
      map["plants.den"] = poly_text(cfg.plants[0].den);
      map["plants.gain"] = fmt17(cfg.plants[0].gain);
    } else {
      map["plants.kind"] = "list";
      for (size_t i = 0; i < cfg.plants.size(); ++i) {
        const std::string base = "plants." + std::to_string(i + 1) + ".";
        map[base + "num"] = poly_text(cfg.plants[i].num);
        map[base + "den"] = poly_text(cfg.plants[i].den);
        map[base + "gain"] = fmt17(cfg.plants[i].gain);
      }
    }
  }

  map["leader.num"] = poly_text(cfg.leader.num);
  map["leader.den"] = poly_text(cfg.leader.den);
  map["leader.gain"] = fmt17(cfg.leader.gain);
  if (cfg.filter) map["filter.d_lambda"] = poly_text(cfg.filter->d_lambda);

  map["tuner.kind"] = to_string(cfg.tuner.kind);
  map["tuner.gamma"] = fmt17(cfg.tuner.gamma);
  map["tuner.beta"] = fmt17(cfg.tuner.beta);
  map["tuner.mu"] = fmt17(cfg.tuner.mu);
  map["tuner.q_base"] = fmt17(cfg.tuner.q_base);
  map["tuner.q_cap"] = std::to_string(cfg.tuner.q_cap);

  switch (cfg.reference.kind) {
    case ReferenceSpec::Kind::step:
      map["reference.kind"] = "step";
      break;
    case ReferenceSpec::Kind::square:
      map["reference.kind"] = "square";
      break;
    case ReferenceSpec::Kind::sine_sum:
      map["reference.kind"] = "sine_sum";
      break;
  }
  map["reference.amplitude"] = fmt17(cfg.reference.amplitude);
  map["reference.period"] = fmt17(cfg.reference.period);
  if (!cfg.reference.amplitudes.empty()) {
    map["reference.amplitudes"] = list_text(cfg.reference.amplitudes);
    map["reference.frequencies"] = list_text(cfg.reference.frequencies);
  }

  if (cfg.disturbance.nu_u.size())
    map["disturbance.nu_u"] = list_text(cfg.disturbance.nu_u);
  if (cfg.disturbance.nu_y.size())
    map["disturbance.nu_y"] = list_text(cfg.disturbance.nu_y);

  map["sim.T"] = fmt17(cfg.T);
  map["sim.h"] = fmt17(cfg.h);
  map["sim.stride"] = std::to_string(cfg.stride);
  map["sim.seed"] = std::to_string(cfg.seed);
  map["sim.mode"] = to_string(cfg.mode);

  if (cfg.x0.size()) map["init.x"] = list_text(cfg.x0);
  if (cfg.z0.size()) map["init.z"] = list_text(cfg.z0);
  if (cfg.w0.size()) map["init.omega"] = list_text(cfg.w0);
  if (cfg.leader0.size()) map["init.leader"] = list_text(cfg.leader0);
  if (cfg.tuner0.size()) map["init.tuner"] = list_text(cfg.tuner0);
  if (cfg.tuner_aux0.size()) map["init.tuner_aux"] = list_text(cfg.tuner_aux0);

  return map;
}

std::string config_text(const ConfigMap& map) {
  std::string out;
  for (const auto& [key, value] : map) out += key + " = " + value + "\n";
  return out;
}

SweepGrid grid_from_config(const ConfigMap& map) {
  SweepGrid grid;
  if (map.count("sweep.topologies"))
    for (const auto& t : split(map.at("sweep.topologies"), ','))
      grid.topologies.push_back(t);
  if (map.count("sweep.m"))
    for (const auto& v : split(map.at("sweep.m"), ','))
      grid.m_list.push_back(to_int("sweep.m", v));
  if (map.count("sweep.tuners"))
    for (const auto& t : split(map.at("sweep.tuners"), ','))
      grid.tuners.push_back(tuner_from_string(t));
  return grid;
}

ConfigMap strip_sweep_keys(const ConfigMap& map) {
  ConfigMap out;
  for (const auto& [key, value] : map)
    if (key.rfind("sweep.", 0) != 0) out[key] = value;
  return out;
}

}  // namespace lfsync
