#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfsync/matching.hpp"

namespace lfsync {

enum class TunerKind { gradient, ht1, ht2 };
std::string to_string(TunerKind k);
TunerKind tuner_from_string(const std::string& s);

enum class SimMode { full, gain_only, matched };
std::string to_string(SimMode m);
SimMode mode_from_string(const std::string& s);

// Per-kind default gains. gamma/beta/mu left unset in a config resolve to
// these; all values are overridable via `tuner.*` keys.
struct TunerDefaults {
  double gamma;
  double beta;
  double mu;
};
TunerDefaults tuner_defaults(TunerKind k);

namespace defaults {
inline constexpr double kQBase = 2.0;
inline constexpr int kQCap = 3;
inline constexpr double kH = 1e-3;
inline constexpr double kT = 200.0;
inline constexpr int kStride = 10;
inline constexpr double kAmplitude = 10.0;
inline constexpr double kPeriod = 40.0;
}  // namespace defaults

struct TunerConfig {
  TunerKind kind = TunerKind::gradient;
  double gamma = -1.0;  // negative = use tuner_defaults(kind)
  double beta = -1.0;
  double mu = -1.0;
  double q_base = defaults::kQBase;  // level multiplier q_base^(min(q,cap)-1)
  int q_cap = defaults::kQCap;
  Vec sign_kp;  // per-agent, filled on prepare
  Vec q_mult;   // per-agent level multipliers, filled on prepare
};

struct ReferenceSpec {
  enum class Kind { step, square, sine_sum };
  Kind kind = Kind::square;
  double amplitude = defaults::kAmplitude;
  double period = defaults::kPeriod;
  std::vector<double> amplitudes;   // sine_sum terms
  std::vector<double> frequencies;  // rad/s
};

struct DisturbanceSpec {
  Vec nu_u;  // constant input disturbance, per agent (empty = zero)
  Vec nu_y;  // constant output disturbance
};

struct ScenarioConfig {
  NetworkSpec network;                   // edges empty = build from topology
  WeightPolicy weights;
  std::vector<TransferFunction> plants;  // empty = benchmark family of m
  TransferFunction leader;               // default set by leader_default()
  std::optional<FilterSpec> filter;      // unset = default_filter(n)
  TunerConfig tuner;
  ReferenceSpec reference;
  DisturbanceSpec disturbance;
  double T = defaults::kT;
  double h = defaults::kH;
  int stride = defaults::kStride;
  long seed = 0;
  SimMode mode = SimMode::full;
  // initial conditions, empty = zero
  Vec x0, z0, w0, leader0, tuner0, tuner_aux0;
  bool record_states = false;

  ScenarioConfig();
};

// Stable reference model (3s + 3)/(s^2 + 5s + 6).
TransferFunction leader_default();

// Benchmark plant (s + k + 4)/((s - 1 - k)(s - 2 - k)), unstable with
// Hurwitz zero, relative degree 1.
TransferFunction family_plant(double k);

// Per-size parameter schedule: m -> k(i), i = 1..m.
double family_k(int m, int i);
std::vector<TransferFunction> family_plants(int m);

// Everything resolved and realized: network matrices, plant realizations,
// solved ideal gains, effective tuner gains.
struct PreparedScenario {
  ScenarioConfig cfg;
  NetworkSpec net_spec;
  NetworkMatrices mats;
  std::vector<TransferFunction> plants;
  std::vector<StateSpaceModel> plant_ss;
  StateSpaceModel leader_ss;
  FilterSpec filter;
  std::vector<IdealGains> gains;
  int n = 0, q = 0, p = 0;  // plant order, filter order, regressor size
};

PreparedScenario prepare_scenario(const ScenarioConfig& cfg);

// Assumption checks surfaced to users: per-plant structure, leader passivity,
// network validation.
ValidationReport validate_scenario(const ScenarioConfig& cfg);

}  // namespace lfsync
