#pragma once

#include <stdexcept>
#include <string>

namespace lfsync {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotStrictlyProper : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WrongRelativeDegree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidCount : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WeightPolicyViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnreachableAgent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonHurwitzZeros : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHurwitz : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingIdealGains : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyTrajectory : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation blow-up; carries the last time at which the state was finite.
struct NonFinite : std::runtime_error {
  double last_finite_time;
  explicit NonFinite(double t)
      : std::runtime_error("non-finite state at t > " + std::to_string(t)),
        last_finite_time(t) {}
};

}  // namespace lfsync
