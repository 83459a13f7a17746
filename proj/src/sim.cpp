#include "lfsync/sim.hpp"

#include <cmath>

#include "lfsync/errors.hpp"

namespace lfsync {

double reference_signal(const ReferenceSpec& ref, double t) {
  switch (ref.kind) {
    case ReferenceSpec::Kind::step:
      return ref.amplitude;
    case ReferenceSpec::Kind::square: {
      const double ph = std::fmod(t, ref.period);
      return ph < 0.5 * ref.period ? ref.amplitude : -ref.amplitude;
    }
    case ReferenceSpec::Kind::sine_sum: {
      double v = 0.0;
      const size_t k = std::min(ref.amplitudes.size(), ref.frequencies.size());
      for (size_t i = 0; i < k; ++i)
        v += ref.amplitudes[i] * std::sin(ref.frequencies[i] * t);
      return v;
    }
  }
  return 0.0;
}

double reference_signal_left(const ReferenceSpec& ref, double t) {
  if (ref.kind == ReferenceSpec::Kind::square) {
    const double ph = std::fmod(t, ref.period);
    if (ph == 0.0 && t > 0.0) return -ref.amplitude;
    if (ph == 0.5 * ref.period) return ref.amplitude;
  }
  return reference_signal(ref, t);
}

namespace {

// Flattened closed loop over the layout
//   [x (n m) | z (q m) | w (q m) | leader (n) | theta (p m) | aux (p m)]
// with the tuner blocks present per mode/kind.
struct Engine {
  const PreparedScenario& ps;
  int m, n, q, p;
  int off_z, off_w, off_l, off_t, off_a;
  bool has_tuner, has_aux;
  Vec a_ell_col;   // A_ell * 1
  Mat theta_star;  // m x 2n ideal rows
  Vec k_star_col;

  explicit Engine(const PreparedScenario& s) : ps(s) {
    m = s.net_spec.m;
    n = s.n;
    q = s.q;
    p = s.p;
    off_z = n * m;
    off_w = off_z + q * m;
    off_l = off_w + q * m;
    off_t = off_l + n;
    has_tuner = s.cfg.mode != SimMode::matched;
    has_aux = has_tuner && s.cfg.tuner.kind != TunerKind::gradient;
    off_a = off_t + (has_tuner ? p * m : 0);
    a_ell_col = s.mats.A_ell * Vec::Ones(m);
    theta_star.resize(m, 2 * n);
    for (int i = 0; i < m; ++i)
      theta_star.row(i) = s.gains[i].theta_star().transpose();
    k_star_col.resize(m);
    for (int i = 0; i < m; ++i) k_star_col(i) = s.gains[i].k_star;
  }

  int size() const { return off_a + (has_aux ? p * m : 0); }

  Vec initial_state() const {
    Vec s = Vec::Zero(size());
    s.segment(0, n * m) = ps.cfg.x0;
    s.segment(off_z, q * m) = ps.cfg.z0;
    s.segment(off_w, q * m) = ps.cfg.w0;
    s.segment(off_l, n) = ps.cfg.leader0;
    if (has_tuner) s.segment(off_t, p * m) = ps.cfg.tuner0;
    if (has_aux) s.segment(off_a, p * m) = ps.cfg.tuner_aux0;
    return s;
  }

  Mat read_rows(const Eigen::Ref<const Vec>& s, int off) const {
    Mat rows(m, p);
    for (int i = 0; i < m; ++i)
      rows.row(i) = s.segment(off + i * p, p).transpose();
    return rows;
  }

  void write_rows(Eigen::Ref<Vec> ds, int off, const Mat& rows) const {
    for (int i = 0; i < m; ++i)
      ds.segment(off + i * p, p) = rows.row(i).transpose();
  }

  struct Signals {
    Vec y;
    double y_leader;
    Vec u;
    Vec e;
    Mat eta;    // m x 2n
    Mat theta;  // m x p when a tuner block exists
  };

  Signals signals(double r, const Eigen::Ref<const Vec>& s) const {
    Signals sig;
    sig.y.resize(m);
    for (int i = 0; i < m; ++i)
      sig.y(i) = ps.plant_ss[i].gain * ps.plant_ss[i].C.dot(s.segment(i * n, n)) +
                 ps.cfg.disturbance.nu_y(i);
    sig.y_leader = ps.leader_ss.gain * ps.leader_ss.C.dot(s.segment(off_l, n));
    Mat Z(m, q), W(m, q);
    for (int i = 0; i < m; ++i) {
      Z.row(i) = s.segment(off_z + i * q, q).transpose();
      W.row(i) = s.segment(off_w + i * q, q).transpose();
    }
    sig.eta = regressor(r, Z, W, sig.y);
    if (has_tuner) sig.theta = read_rows(s, off_t);
    sig.u.resize(m);
    switch (ps.cfg.mode) {
      case SimMode::matched:
        sig.u = (theta_star.array() * sig.eta.array()).rowwise().sum();
        break;
      case SimMode::full:
        sig.u = (sig.theta.array() * sig.eta.array()).rowwise().sum();
        break;
      case SimMode::gain_only:
        for (int i = 0; i < m; ++i)
          sig.u(i) = sig.theta(i, 0) * r +
                     theta_star.row(i).tail(2 * n - 1).dot(
                         sig.eta.row(i).tail(2 * n - 1));
        break;
    }
    sig.e = ps.mats.L_m * sig.y - sig.y_leader * a_ell_col;
    return sig;
  }

  void rhs(double r, const Eigen::Ref<const Vec>& s,
           Eigen::Ref<Vec> ds) const {
    const Signals sig = signals(r, s);
    for (int i = 0; i < m; ++i) {
      ds.segment(i * n, n) =
          ps.plant_ss[i].A * s.segment(i * n, n) +
          ps.plant_ss[i].B * (sig.u(i) + ps.cfg.disturbance.nu_u(i));
      ds.segment(off_z + i * q, q) =
          ps.filter.Lambda * s.segment(off_z + i * q, q) +
          ps.filter.theta * sig.u(i);
      ds.segment(off_w + i * q, q) =
          ps.filter.Lambda * s.segment(off_w + i * q, q) +
          ps.filter.theta * sig.y(i);
    }
    ds.segment(off_l, n) =
        ps.leader_ss.A * s.segment(off_l, n) + ps.leader_ss.B * r;
    if (!has_tuner) return;
    const Mat eta_t =
        ps.cfg.mode == SimMode::gain_only ? gain_eta(r) : sig.eta;
    switch (ps.cfg.tuner.kind) {
      case TunerKind::gradient:
        write_rows(ds, off_t,
                   gradient_rhs(sig.theta, sig.e, eta_t, ps.cfg.tuner,
                                ps.mats.L_m));
        break;
      case TunerKind::ht1: {
        const Mat aux = read_rows(s, off_a);
        const auto d = ht1_rhs(sig.theta, aux, sig.e, eta_t, ps.cfg.tuner,
                               ps.mats.L_m);
        write_rows(ds, off_t, d.first);
        write_rows(ds, off_a, d.second);
        break;
      }
      case TunerKind::ht2: {
        const Mat aux = read_rows(s, off_a);
        const auto d = ht2_rhs(sig.theta, aux, sig.e, eta_t, ps.cfg.tuner,
                               ps.mats.L_m);
        write_rows(ds, off_t, d.first);
        write_rows(ds, off_a, d.second);
        break;
      }
    }
  }

  Mat gain_eta(double r) const { return Mat::Constant(m, 1, r); }

  double theta_error(const Signals& sig) const {
    if (!has_tuner) return 0.0;
    if (ps.cfg.mode == SimMode::gain_only)
      return (sig.theta.col(0) - k_star_col).norm();
    return (sig.theta - theta_star).norm();
  }
};

}  // namespace

int state_size(const PreparedScenario& ps) { return Engine(ps).size(); }

Vec closed_loop_rhs(const PreparedScenario& ps, double t, const Vec& state) {
  const Engine eng(ps);
  if (state.size() != eng.size())
    throw DimensionMismatch("closed_loop_rhs: state size " +
                            std::to_string(state.size()) + ", expected " +
                            std::to_string(eng.size()));
  Vec ds(eng.size());
  eng.rhs(reference_signal(ps.cfg.reference, t), state, ds);
  if (!ds.allFinite()) throw NonFinite(t);
  return ds;
}

Trajectory integrate(const PreparedScenario& ps) {
  const Engine eng(ps);
  const auto& cfg = ps.cfg;
  const long nsteps = std::llround(cfg.T / cfg.h);
  if (nsteps < 1) throw ConfigInvalid("horizon shorter than one step");
  const long nsamp = nsteps / cfg.stride + 1;

  Trajectory traj;
  traj.m = eng.m;
  traj.h = cfg.h;
  traj.stride = cfg.stride;
  traj.t.reserve(nsamp);
  traj.y.resize(nsamp, eng.m);
  traj.e.resize(nsamp, eng.m);
  traj.u.resize(nsamp, eng.m);
  traj.y_leader.resize(nsamp);
  traj.theta_norm.resize(nsamp);
  if (cfg.record_states) traj.states.resize(nsamp, eng.size());

  Vec s = eng.initial_state();
  long row = 0;
  auto record = [&](long k) {
    const double t = k * cfg.h;
    const auto sig = eng.signals(reference_signal(cfg.reference, t), s);
    traj.t.push_back(t);
    traj.y.row(row) = sig.y.transpose();
    traj.e.row(row) = sig.e.transpose();
    traj.u.row(row) = sig.u.transpose();
    traj.y_leader(row) = sig.y_leader;
    traj.theta_norm(row) = eng.theta_error(sig);
    if (cfg.record_states) traj.states.row(row) = s.transpose();
    ++row;
  };

  auto f = [&eng, &cfg](double t, const Vec& x) {
    Vec d(x.size());
    eng.rhs(reference_signal(cfg.reference, t), x, d);
    return d;
  };
  auto f_end = [&eng, &cfg](double t, const Vec& x) {
    Vec d(x.size());
    eng.rhs(reference_signal_left(cfg.reference, t), x, d);
    return d;
  };

  record(0);
  for (long k = 0; k < nsteps; ++k) {
    const double t = k * cfg.h;
    s = rk4_step(t, cfg.h, s, f, f_end);
    if (!s.allFinite()) throw NonFinite(t);
    if ((k + 1) % cfg.stride == 0) record(k + 1);
  }
  return traj;
}

Trajectory integrate(const ScenarioConfig& cfg) {
  return integrate(prepare_scenario(cfg));
}

Trajectory run_matched(ScenarioConfig cfg) {
  cfg.mode = SimMode::matched;
  return integrate(prepare_scenario(cfg));
}

ShadowTrajectory run_with_matched_shadow(const PreparedScenario& ps) {
  if (ps.cfg.mode == SimMode::matched)
    throw ConfigInvalid("shadow run needs an adaptive mode");
  for (size_t i = 1; i < ps.plants.size(); ++i)
    if (!(ps.plants[i].num == ps.plants[0].num &&
          ps.plants[i].den == ps.plants[0].den &&
          ps.plants[i].gain == ps.plants[0].gain))
      throw ConfigInvalid(
          "shadow run requires identical agents; with mixed dynamics the "
          "matched copy is not the consensual reference");

  const Engine eng(ps);
  const auto& cfg = ps.cfg;
  const int m = eng.m, n = eng.n, q = eng.q;
  const int na = eng.size();        // adaptive block
  const int ks = m * (n + 2 * q);   // matched copy block and error size
  const int mz = n * m, mw = (n + q) * m;

  const Mat L_hat = block_lift(ps.mats.L_m, n, q);
  const Mat A_hat = block_lift(ps.mats.A_ell, n, q);

  auto matched_rhs = [&](double r, const Eigen::Ref<const Vec>& s,
                         Eigen::Ref<Vec> ds) {
    for (int i = 0; i < m; ++i) {
      const double y = ps.plant_ss[i].gain *
                           ps.plant_ss[i].C.dot(s.segment(i * n, n)) +
                       cfg.disturbance.nu_y(i);
      double u = eng.theta_star(i, 0) * r + eng.theta_star(i, 2 * n - 1) * y;
      u += eng.theta_star.row(i).segment(1, q).dot(
          s.segment(mz + i * q, q));
      u += eng.theta_star.row(i).segment(1 + q, q).dot(
          s.segment(mw + i * q, q));
      ds.segment(i * n, n) =
          ps.plant_ss[i].A * s.segment(i * n, n) +
          ps.plant_ss[i].B * (u + cfg.disturbance.nu_u(i));
      ds.segment(mz + i * q, q) =
          ps.filter.Lambda * s.segment(mz + i * q, q) + ps.filter.theta * u;
      ds.segment(mw + i * q, q) =
          ps.filter.Lambda * s.segment(mw + i * q, q) + ps.filter.theta * y;
    }
  };

  auto joint = [&](double r, const Vec& x) {
    Vec d(na + ks);
    eng.rhs(r, x.head(na), d.head(na));
    matched_rhs(r, x.tail(ks), d.tail(ks));
    return d;
  };
  auto f = [&](double t, const Vec& x) {
    return joint(reference_signal(cfg.reference, t), x);
  };
  auto f_end = [&](double t, const Vec& x) {
    return joint(reference_signal_left(cfg.reference, t), x);
  };

  Vec s(na + ks);
  s.head(na) = eng.initial_state();
  s.segment(na, mz) = cfg.x0;
  s.segment(na + mz, q * m) = cfg.z0;
  s.segment(na + mw, q * m) = cfg.w0;

  const long nsteps = std::llround(cfg.T / cfg.h);
  const long nsamp = nsteps / cfg.stride + 1;
  ShadowTrajectory out;
  out.kind = cfg.tuner.kind;
  out.m = m;
  out.p = eng.p;
  out.t.reserve(nsamp);
  out.ea.resize(nsamp, ks);
  out.theta.reserve(nsamp);
  out.aux.reserve(nsamp);

  long row = 0;
  auto record = [&](long k) {
    out.t.push_back(k * cfg.h);
    out.ea.row(row) =
        (L_hat * s.head(ks) - A_hat * s.segment(na, ks)).transpose();
    out.theta.push_back(eng.read_rows(s.head(na), eng.off_t));
    out.aux.push_back(eng.has_aux ? eng.read_rows(s.head(na), eng.off_a)
                                  : Mat::Zero(m, eng.p));
    ++row;
  };

  record(0);
  for (long k = 0; k < nsteps; ++k) {
    const double t = k * cfg.h;
    s = rk4_step(t, cfg.h, s, f, f_end);
    if (!s.allFinite()) throw NonFinite(t);
    if ((k + 1) % cfg.stride == 0) record(k + 1);
  }
  return out;
}

}  // namespace lfsync
