#pragma once

#include <vector>

#include "lfsync/lti.hpp"
#include "lfsync/network.hpp"

namespace lfsync {

// Controller filter of order n-1: Lambda Hurwitz with characteristic
// polynomial d_lambda (monic), input column theta, (Lambda, theta)
// controllable. n_lambda carries the all-ones coefficient convention.
struct FilterSpec {
  Mat Lambda;
  Vec theta;
  Polynomial d_lambda;
  Polynomial n_lambda;
};

// Companion-form filter with d_lambda = (s+1)^(n-1).
FilterSpec default_filter(int n);

// Ideal per-agent gains; assembled vector ordered [k*, psi, phi, tau].
struct IdealGains {
  double k_star = 0.0;
  Vec psi;
  Vec phi;
  double tau = 0.0;
  Vec theta_star() const;
};

struct MatchingSystem {
  Mat S_bar;   // (2n-1) x (2n-1): shifted-d columns then shifted k_p*n columns
  Vec Pi_bar;  // target polynomial coefficients, ascending
};

MatchingSystem build_matching_system(const TransferFunction& plant,
                                     const TransferFunction& leader,
                                     const FilterSpec& filter);

IdealGains solve_ideal_gains(const TransferFunction& plant,
                             const TransferFunction& leader,
                             const FilterSpec& filter);

// Max absolute coefficient difference between the two sides of the matching
// identity; the module's oracle.
double verify_matching(const IdealGains& gains, const TransferFunction& plant,
                       const TransferFunction& leader,
                       const FilterSpec& filter);

// Block lift diag(M (x) I_n, M (x) I_q, M (x) I_q) over the grouped state
// layout [all x | all z | all omega].
Mat block_lift(const Mat& M, int n, int q);

struct AugmentedSystem {
  Mat A_a;
  Mat B_a;  // one column per agent, [B; theta; 0] blocks
  Mat C_a;  // one row per agent, [k_p*C | 0 | 0] blocks
  Mat L_hat;
  Mat A_hat_ell;
  int m = 0, n = 0, q = 0;
};

AugmentedSystem assemble_augmented(const std::vector<StateSpaceModel>& plants,
                                   const std::vector<IdealGains>& gains,
                                   const FilterSpec& filter,
                                   const NetworkMatrices& mats);

// Solves A^T P + P A = -Q via complex Schur; A must be Hurwitz.
Mat lyapunov_solve(const Mat& A, const Mat& Q);

// Returns (P_a, |P_a B_a - C_a^T|_inf) for the given Q_a.
std::pair<Mat, double> lyapunov_diagnostics(const Mat& A_a, const Mat& B_a,
                                            const Mat& C_a, const Mat& Q_a);

// Positive-semidefinite P with P B = C^T exactly and A^T P + P A <= 0
// (equal to -qq^T - rho P on the observable subspace). Built from the
// observability decomposition and a spectral factorization on the minimal
// part; the feasibility certificate behind the error-model passivity.
struct SprCertificate {
  Mat P;
  Vec q;
  int n_obs = 0;
};

SprCertificate spr_certificate(const Mat& A, const Mat& B, const Mat& C,
                               double rho = 0.5);

// Replicates a per-agent P over (x, z, omega) into the grouped network
// layout, one identical block per agent.
Mat replicate_agent_certificate(const Mat& P_agent, int m, int n, int q);

}  // namespace lfsync
