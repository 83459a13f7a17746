#pragma once

#include "lfsync/scenario.hpp"

namespace lfsync {

// Parameter states are stored compactly, one row per agent (the nonzero
// block of the block-diagonal parameter matrix). to_block_matrix
// materializes the full (p*m) x m form with exact zeros off-block.
Mat to_block_matrix(const Mat& rows);

// Stacks per-agent regressors [r, z_i, omega_i, y_i] as rows of an m x 2n
// matrix. Z and W carry one (n-1)-row per agent.
Mat regressor(double r, const Mat& Z, const Mat& W, const Vec& y);

double normalization(const Mat& eta, double mu);

// dTheta = -sign(k_p) Gamma_gamma L_m^T e eta^T, per-agent rows.
Mat gradient_rhs(const Mat& Theta, const Vec& e_bar, const Mat& eta,
                 const TunerConfig& cfg, const Mat& L_m);

std::pair<Mat, Mat> ht1_rhs(const Mat& Theta1, const Mat& Xi1,
                            const Vec& e_bar, const Mat& eta,
                            const TunerConfig& cfg, const Mat& L_m);

std::pair<Mat, Mat> ht2_rhs(const Mat& Theta2, const Mat& Theta2_dot,
                            const Vec& e_bar, const Mat& eta,
                            const TunerConfig& cfg, const Mat& L_m);

// 2 (gamma_m / beta_m) |B_a^T L_hat P_a|_F^2 with P_a from Q_a = 2I.
double mu_lower_bound(const Mat& A_a, const Mat& B_a, const Mat& C_a,
                      const Mat& L_hat, double gamma_m, double beta_m);

// Sampled co-simulation window: augmented error state plus parameter rows,
// produced by run_with_matched_shadow.
struct ShadowTrajectory {
  std::vector<double> t;
  Mat ea;                  // samples x (m (n + 2q))
  std::vector<Mat> theta;  // per sample, m x p
  std::vector<Mat> aux;    // xi1 / theta2_dot when present
  TunerKind kind = TunerKind::gradient;
  int m = 0, p = 0;
};

struct MonitorReport {
  double max_increment = 0.0;  // largest positive step of V
  double max_v = 0.0;
  std::vector<double> v;
};

// Discrete decrease check of the stability function
//   V = ea^T P ea + sum_i |theta_i - theta*_i|^2 / gamma_i   (gradient)
//   V = ea^T P ea + sum_i (|th1_i - xi1_i|^2 + |xi1_i - theta*_i|^2)/gamma_i
// with the momentum pair xi2 = theta2 + theta2_dot/beta for the second
// high-order law. Requires ideal gains; harness-only.
MonitorReport lyapunov_monitor(const ShadowTrajectory& window, const Mat& P,
                               const Mat& theta_star_rows,
                               const TunerConfig& cfg);

}  // namespace lfsync
