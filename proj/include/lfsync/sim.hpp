#pragma once

#include "lfsync/tuners.hpp"

namespace lfsync {

// Piecewise reference, right-continuous: square takes +A on [kP, kP + P/2)
// and -A on [kP + P/2, (k+1)P).
double reference_signal(const ReferenceSpec& ref, double t);

// Left limit of the reference; differs from reference_signal only at square
// jump instants. Terminal integration stages use this so each step spans a
// single smooth piece.
double reference_signal_left(const ReferenceSpec& ref, double t);

// One classical fourth-order step of ds/dt = f(t, s). The terminal stage is
// evaluated through f_end; passing the left-limit variant keeps jump forcing
// out of the interior of the step.
template <class F, class FEnd>
Vec rk4_step(double t, double h, const Vec& s, F&& f, FEnd&& f_end) {
  const Vec k1 = f(t, s);
  const Vec k2 = f(t + 0.5 * h, Vec(s + (0.5 * h) * k1));
  const Vec k3 = f(t + 0.5 * h, Vec(s + (0.5 * h) * k2));
  const Vec k4 = f_end(t + h, Vec(s + h * k3));
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class F>
Vec rk4_step(double t, double h, const Vec& s, F&& f) {
  return rk4_step(t, h, s, f, f);
}

// Uniformly sampled closed-loop run; grid spacing is stride * h.
struct Trajectory {
  std::vector<double> t;
  Mat y;           // samples x m, measured outputs
  Vec y_leader;    // samples
  Mat e;           // samples x m, distributed errors
  Mat u;           // samples x m, commanded inputs
  Vec theta_norm;  // samples, |Theta - Theta*|_F (zero in matched mode)
  Mat states;      // samples x N when recorded, else empty
  int m = 0;
  double h = 0.0;
  int stride = 1;
};

// Single derivative evaluation at (t, state) with the right-continuous
// reference; the integration core shares this path. Throws NonFinite when
// any derivative entry is not finite.
Vec closed_loop_rhs(const PreparedScenario& ps, double t, const Vec& state);

// Flat state size for the prepared scenario (plants, filters, leader, tuner
// blocks as dictated by mode and tuner kind).
int state_size(const PreparedScenario& ps);

Trajectory integrate(const PreparedScenario& ps);
Trajectory integrate(const ScenarioConfig& cfg);

// Same scenario with parameters frozen at the ideal gains.
Trajectory run_matched(ScenarioConfig cfg);

// Adaptive network and its matched copy integrated jointly on one grid;
// yields the sampled augmented error window consumed by lyapunov_monitor.
// Requires identical agents: the matched copy then coincides with the
// consensual reference trajectory and the lifted balance cancels it exactly.
ShadowTrajectory run_with_matched_shadow(const PreparedScenario& ps);

}  // namespace lfsync
