#include "lfsync/tuners.hpp"

#include "lfsync/errors.hpp"

namespace lfsync {

Mat to_block_matrix(const Mat& rows) {
  const int m = static_cast<int>(rows.rows());
  const int p = static_cast<int>(rows.cols());
  Mat out = Mat::Zero(m * p, m);
  for (int i = 0; i < m; ++i) out.col(i).segment(i * p, p) = rows.row(i);
  return out;
}

Mat regressor(double r, const Mat& Z, const Mat& W, const Vec& y) {
  const int m = static_cast<int>(y.size());
  if (Z.rows() != m || W.rows() != m || Z.cols() != W.cols())
    throw DimensionMismatch("regressor: block sizes");
  const int q = static_cast<int>(Z.cols());
  Mat eta(m, 2 * (q + 1));
  for (int i = 0; i < m; ++i) {
    eta(i, 0) = r;
    eta.row(i).segment(1, q) = Z.row(i);
    eta.row(i).segment(1 + q, q) = W.row(i);
    eta(i, 2 * q + 1) = y(i);
  }
  return eta;
}

double normalization(const Mat& eta, double mu) {
  if (mu < 0.0) throw ConfigInvalid("normalization: mu must be >= 0");
  return 1.0 + mu * eta.squaredNorm();
}

static void check_dims(const Mat& Theta, const Vec& e_bar, const Mat& eta,
                       const TunerConfig& cfg, const Mat& L_m) {
  const int m = static_cast<int>(e_bar.size());
  if (Theta.rows() != m || eta.rows() != m || Theta.cols() != eta.cols() ||
      L_m.rows() != m || L_m.cols() != m || cfg.sign_kp.size() != m ||
      cfg.q_mult.size() != m)
    throw DimensionMismatch("tuner rhs: inconsistent sizes");
}

Mat gradient_rhs(const Mat& Theta, const Vec& e_bar, const Mat& eta,
                 const TunerConfig& cfg, const Mat& L_m) {
  check_dims(Theta, e_bar, eta, cfg, L_m);
  const Vec lte = L_m.transpose() * e_bar;
  Mat d(Theta.rows(), Theta.cols());
  for (int i = 0; i < Theta.rows(); ++i)
    d.row(i) = -cfg.sign_kp(i) * cfg.gamma * cfg.q_mult(i) * lte(i) * eta.row(i);
  return d;
}

std::pair<Mat, Mat> ht1_rhs(const Mat& Theta1, const Mat& Xi1,
                            const Vec& e_bar, const Mat& eta,
                            const TunerConfig& cfg, const Mat& L_m) {
  check_dims(Theta1, e_bar, eta, cfg, L_m);
  if (Xi1.rows() != Theta1.rows() || Xi1.cols() != Theta1.cols())
    throw DimensionMismatch("ht1_rhs: Xi1 shape");
  const double nrm = normalization(eta, cfg.mu);
  Mat dTheta1(Theta1.rows(), Theta1.cols());
  for (int i = 0; i < Theta1.rows(); ++i)
    dTheta1.row(i) =
        -cfg.beta * cfg.q_mult(i) * nrm * (Theta1.row(i) - Xi1.row(i));
  return {dTheta1, gradient_rhs(Xi1, e_bar, eta, cfg, L_m)};
}

std::pair<Mat, Mat> ht2_rhs(const Mat& Theta2, const Mat& Theta2_dot,
                            const Vec& e_bar, const Mat& eta,
                            const TunerConfig& cfg, const Mat& L_m) {
  check_dims(Theta2, e_bar, eta, cfg, L_m);
  if (Theta2_dot.rows() != Theta2.rows() ||
      Theta2_dot.cols() != Theta2.cols())
    throw DimensionMismatch("ht2_rhs: Theta2_dot shape");
  const double nrm = normalization(eta, cfg.mu);
  const Vec lte = L_m.transpose() * e_bar;
  Mat dd(Theta2.rows(), Theta2.cols());
  for (int i = 0; i < Theta2.rows(); ++i) {
    const double bi = cfg.beta * cfg.q_mult(i);
    const double gi = cfg.gamma * cfg.q_mult(i);
    dd.row(i) = -bi * Theta2_dot.row(i) -
                (gi * bi / nrm) * cfg.sign_kp(i) * lte(i) * eta.row(i);
  }
  return {Theta2_dot, dd};
}

double mu_lower_bound(const Mat& A_a, const Mat& B_a, const Mat& C_a,
                      const Mat& L_hat, double gamma_m, double beta_m) {
  (void)C_a;
  if (B_a.rows() != A_a.rows() || L_hat.rows() != A_a.rows())
    throw DimensionMismatch("mu_lower_bound: sizes");
  if (B_a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Mat P =
      lyapunov_solve(A_a, 2.0 * Mat::Identity(A_a.rows(), A_a.cols()));
  const double f = (B_a.transpose() * L_hat * P).squaredNorm();
  return 2.0 * (gamma_m / beta_m) * f;
}

MonitorReport lyapunov_monitor(const ShadowTrajectory& window, const Mat& P,
                               const Mat& theta_star_rows,
                               const TunerConfig& cfg) {
  if (theta_star_rows.rows() != window.m ||
      theta_star_rows.cols() != window.p)
    throw MissingIdealGains("lyapunov_monitor: ideal gains required");
  if (cfg.q_mult.size() != window.m)
    throw DimensionMismatch("lyapunov_monitor: q multipliers");
  MonitorReport rep;
  rep.v.reserve(window.t.size());
  for (size_t k = 0; k < window.t.size(); ++k) {
    const Vec ea = window.ea.row(k).transpose();
    double v = ea.dot(P * ea);
    const Mat& th = window.theta[k];
    for (int i = 0; i < window.m; ++i) {
      const double gi = cfg.gamma * cfg.q_mult(i);
      switch (window.kind) {
        case TunerKind::gradient:
          v += (th.row(i) - theta_star_rows.row(i)).squaredNorm() / gi;
          break;
        case TunerKind::ht1: {
          const Mat& xi = window.aux[k];
          v += (th.row(i) - xi.row(i)).squaredNorm() / gi;
          v += (xi.row(i) - theta_star_rows.row(i)).squaredNorm() / gi;
          break;
        }
        case TunerKind::ht2: {
          const double bi = cfg.beta * cfg.q_mult(i);
          const RowVec xi2 = th.row(i) + window.aux[k].row(i) / bi;
          v += (th.row(i) - xi2.row(i)).squaredNorm() / gi;
          v += (xi2.row(i) - theta_star_rows.row(i)).squaredNorm() / gi;
          break;
        }
      }
    }
    rep.v.push_back(v);
  }
  for (size_t k = 1; k < rep.v.size(); ++k)
    rep.max_increment = std::max(rep.max_increment, rep.v[k] - rep.v[k - 1]);
  for (double v : rep.v) rep.max_v = std::max(rep.max_v, v);
  return rep;
}

}  // namespace lfsync
