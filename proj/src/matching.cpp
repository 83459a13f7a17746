#include "lfsync/matching.hpp"

#include <cmath>
#include <complex>

#include "lfsync/errors.hpp"

namespace lfsync {

FilterSpec default_filter(int n) {
  if (n < 2) throw DegreeMismatch("filter order needs plant order >= 2");
  const int q = n - 1;
  FilterSpec f;
  f.d_lambda = Polynomial{1.0};
  for (int k = 0; k < q; ++k)
    f.d_lambda = poly_convolve(f.d_lambda, Polynomial{1.0, 1.0});
  f.Lambda = companion(f.d_lambda);
  f.theta = Vec::Zero(q);
  f.theta(q - 1) = 1.0;
  f.n_lambda = Polynomial(std::vector<double>(q, 1.0));
  return f;
}

Vec IdealGains::theta_star() const {
  Vec v(2 + psi.size() + phi.size());
  v(0) = k_star;
  v.segment(1, psi.size()) = psi;
  v.segment(1 + psi.size(), phi.size()) = phi;
  v(v.size() - 1) = tau;
  return v;
}

static void check_pair(const TransferFunction& plant,
                       const TransferFunction& leader,
                       const FilterSpec& filter) {
  const int n = plant.den.degree();
  if (n != leader.den.degree())
    throw DegreeMismatch("plant and leader orders differ");
  if (relative_degree(plant) != 1 || relative_degree(leader) != 1)
    throw WrongRelativeDegree("matching requires relative degree 1");
  if (filter.d_lambda.degree() != n - 1)
    throw DegreeMismatch("filter polynomial degree must be n - 1");
  if (!is_hurwitz(plant.num)) throw NonHurwitzZeros("plant zeros not Hurwitz");
}

// Target polynomial pi = d_lambda * (d * n_l - d_l * n) / n_l; exact only
// when d_lambda contains the leader numerator as a factor.
static Polynomial target_pi(const TransferFunction& plant,
                            const TransferFunction& leader,
                            const FilterSpec& filter) {
  const Polynomial diff =
      poly_add(poly_convolve(plant.den, leader.num),
               poly_scale(poly_convolve(leader.den, plant.num), -1.0));
  const Polynomial T = poly_convolve(filter.d_lambda, diff);
  auto [quot, rem] = poly_divmod(T, leader.num);
  if (poly_max_abs_diff(rem, Polynomial{}) > 1e-9)
    throw ConfigInvalid(
        "filter polynomial must contain the leader numerator as a factor");
  return quot;
}

MatchingSystem build_matching_system(const TransferFunction& plant,
                                     const TransferFunction& leader,
                                     const FilterSpec& filter) {
  check_pair(plant, leader, filter);
  const int n = plant.den.degree();
  const int rows = 2 * n - 1;
  MatchingSystem sys;
  sys.S_bar = Mat::Zero(rows, rows);
  for (int j = 0; j < n - 1; ++j)
    for (int k = 0; k <= plant.den.degree(); ++k)
      sys.S_bar(j + k, j) = plant.den.c[k];
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= plant.num.degree(); ++k)
      sys.S_bar(j + k, n - 1 + j) = plant.gain * plant.num.c[k];
  const Polynomial pi = target_pi(plant, leader, filter);
  sys.Pi_bar = Vec::Zero(rows);
  for (int k = 0; k <= pi.degree() && k < rows; ++k) sys.Pi_bar(k) = pi.c[k];
  return sys;
}

IdealGains solve_ideal_gains(const TransferFunction& plant,
                             const TransferFunction& leader,
                             const FilterSpec& filter) {
  const MatchingSystem sys = build_matching_system(plant, leader, filter);
  const int n = plant.den.degree();
  Eigen::JacobiSVD<Mat> svd(sys.S_bar,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw RankDeficient("matching system singular (non-coprime plant)");
  const Vec sol = svd.solve(sys.Pi_bar);
  IdealGains g;
  g.psi = sol.head(n - 1);
  const Vec chi = sol.tail(n);
  g.tau = chi(n - 1);  // d_lambda monic of degree n-1
  g.phi = Vec::Zero(n - 1);
  for (int k = 0; k < n - 1; ++k)
    g.phi(k) = chi(k) - g.tau * filter.d_lambda.c[k];
  g.k_star = leader.gain / plant.gain;
  return g;
}

double verify_matching(const IdealGains& gains, const TransferFunction& plant,
                       const TransferFunction& leader,
                       const FilterSpec& filter) {
  const Polynomial pi = target_pi(plant, leader, filter);
  // psi and phi act through the filter power basis [1, s, ..., s^(n-2)]
  Polynomial psi_poly(std::vector<double>(gains.psi.data(),
                                          gains.psi.data() + gains.psi.size()));
  Polynomial phi_poly(std::vector<double>(gains.phi.data(),
                                          gains.phi.data() + gains.phi.size()));
  const Polynomial chi =
      poly_add(phi_poly, poly_scale(filter.d_lambda, gains.tau));
  const Polynomial rhs =
      poly_add(poly_convolve(psi_poly, plant.den),
               poly_scale(poly_convolve(chi, plant.num), plant.gain));
  return poly_max_abs_diff(pi, rhs);
}

Mat block_lift(const Mat& M, int n, int q) {
  const int m = static_cast<int>(M.rows());
  const int Na = m * (n + 2 * q);
  Mat out = Mat::Zero(Na, Na);
  auto kron_into = [&](int off, int k) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (M(i, j) != 0.0)
          out.block(off + i * k, off + j * k, k, k) =
              M(i, j) * Mat::Identity(k, k);
  };
  kron_into(0, n);
  kron_into(m * n, q);
  kron_into(m * n + m * q, q);
  return out;
}

AugmentedSystem assemble_augmented(const std::vector<StateSpaceModel>& plants,
                                   const std::vector<IdealGains>& gains,
                                   const FilterSpec& filter,
                                   const NetworkMatrices& mats) {
  const int m = static_cast<int>(plants.size());
  if (m == 0 || gains.size() != plants.size())
    throw DimensionMismatch("assemble_augmented: plants/gains sizes");
  if (mats.L_m.rows() != m)
    throw DimensionMismatch("assemble_augmented: network size");
  const int n = static_cast<int>(plants[0].A.rows());
  const int q = static_cast<int>(filter.Lambda.rows());
  if (q != n - 1) throw DimensionMismatch("assemble_augmented: filter order");

  AugmentedSystem out;
  out.m = m;
  out.n = n;
  out.q = q;
  const int Na = m * (n + 2 * q);
  out.A_a = Mat::Zero(Na, Na);
  out.B_a = Mat::Zero(Na, m);
  out.C_a = Mat::Zero(m, Na);
  const int oz = m * n, ow = m * n + m * q;
  for (int i = 0; i < m; ++i) {
    const auto& p = plants[i];
    if (p.A.rows() != n) throw DimensionMismatch("plant order varies");
    const auto& g = gains[i];
    const double kp = p.gain;
    const RowVec kpC = kp * p.C;
    const int xs = i * n, zs = oz + i * q, ws = ow + i * q;
    out.A_a.block(xs, xs, n, n) = p.A + p.B * (g.tau * kpC);
    out.A_a.block(xs, zs, n, q) = p.B * g.psi.transpose();
    out.A_a.block(xs, ws, n, q) = p.B * g.phi.transpose();
    out.A_a.block(zs, xs, q, n) = filter.theta * (g.tau * kpC);
    out.A_a.block(zs, zs, q, q) = filter.Lambda + filter.theta * g.psi.transpose();
    out.A_a.block(zs, ws, q, q) = filter.theta * g.phi.transpose();
    out.A_a.block(ws, xs, q, n) = filter.theta * kpC;
    out.A_a.block(ws, ws, q, q) = filter.Lambda;
    out.B_a.col(i).segment(xs, n) = p.B;
    out.B_a.col(i).segment(zs, q) = filter.theta;
    out.C_a.row(i).segment(xs, n) = kpC;
  }
  out.L_hat = block_lift(mats.L_m, n, q);
  out.A_hat_ell = block_lift(mats.A_ell, n, q);
  return out;
}

static void require_hurwitz(const Mat& A, const char* who) {
  Eigen::EigenSolver<Mat> es(A, false);
  if (es.eigenvalues().real().maxCoeff() >= 0.0)
    throw NotHurwitz(std::string(who) + ": matrix is not Hurwitz");
}

Mat lyapunov_solve(const Mat& A, const Mat& Q) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || Q.rows() != n || Q.cols() != n)
    throw DimensionMismatch("lyapunov_solve: sizes");
  require_hurwitz(A, "lyapunov_solve");
  using CMat = Eigen::MatrixXcd;
  Eigen::ComplexSchur<CMat> schur(A.cast<std::complex<double>>());
  const CMat& T = schur.matrixT();
  const CMat& U = schur.matrixU();
  CMat Qt = U.adjoint() * Q.cast<std::complex<double>>() * U;
  CMat Y = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::complex<double> acc = -Qt(i, j);
      for (int k = 0; k < i; ++k) acc -= std::conj(T(k, i)) * Y(k, j);
      for (int k = 0; k < j; ++k) acc -= Y(i, k) * T(k, j);
      Y(i, j) = acc / (std::conj(T(i, i)) + T(j, j));
    }
  }
  return (U * Y * U.adjoint()).real();
}

std::pair<Mat, double> lyapunov_diagnostics(const Mat& A_a, const Mat& B_a,
                                            const Mat& C_a, const Mat& Q_a) {
  const Mat P = lyapunov_solve(A_a, Q_a);
  const double res = (P * B_a - C_a.transpose()).cwiseAbs().maxCoeff();
  return {P, res};
}

namespace {

Polynomial sign_flip(const Polynomial& p) {
  std::vector<double> out = p.c;
  for (size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return Polynomial(std::move(out));
}

// Hurwitz factor g of an even symmetric polynomial S(s) = g(s) g(-s).
Polynomial spectral_factor(const Polynomial& S) {
  const int deg = S.degree();
  if (deg % 2 != 0)
    throw DegenerateInput("spectral factor: odd degree");
  auto roots = poly_roots(S);
  std::vector<std::complex<double>> stable;
  for (const auto& r : roots)
    if (r.real() < -1e-9) stable.push_back(r);
  if (static_cast<int>(stable.size()) != deg / 2)
    throw DegenerateInput("spectral factor: roots on the imaginary axis");
  const double gd2 = S.leading() * ((deg / 2) % 2 == 0 ? 1.0 : -1.0);
  if (gd2 <= 0.0) throw DegenerateInput("spectral factor: negative leading");
  return poly_from_roots(stable, std::sqrt(gd2));
}

// Lur'e construction on a minimal (A, B, C) after the stability-margin
// shift: A_s^T P + P A_s = -q q^T with P B = C^T.
std::pair<Mat, Vec> meyer_minimal(const Mat& A, const Vec& B, const RowVec& C,
                                  double rho) {
  const int N = static_cast<int>(A.rows());
  const Mat As = A + (rho / 2.0) * Mat::Identity(N, N);
  require_hurwitz(As, "spr_certificate (after shift)");
  const Polynomial d = char_poly(As);
  const auto V = adjugate_basis(As, B, d);
  std::vector<double> ncoef(N, 0.0);
  for (int k = 0; k < N; ++k) ncoef[k] = C.dot(V[k]);
  const Polynomial num(std::move(ncoef));
  Polynomial S = poly_add(poly_convolve(num, sign_flip(d)),
                          poly_convolve(sign_flip(num), d));
  for (size_t k = 1; k < S.c.size(); k += 2) S.c[k] = 0.0;  // even by symmetry
  S.trim();
  const Polynomial g = spectral_factor(S);
  Mat Vmat(N, N);
  for (int k = 0; k < N; ++k) Vmat.row(k) = V[k].transpose();
  Vec gpad = Vec::Zero(N);
  for (int k = 0; k <= g.degree() && k < N; ++k) gpad(k) = g.c[k];
  const Vec q = Vmat.colPivHouseholderQr().solve(gpad);
  const Mat P = lyapunov_solve(As, q * q.transpose());
  return {P, q};
}

}  // namespace

SprCertificate spr_certificate(const Mat& A, const Mat& B, const Mat& C,
                               double rho) {
  const int N = static_cast<int>(A.rows());
  if (B.cols() != 1 || C.rows() != 1)
    throw DimensionMismatch("spr_certificate: single channel expected");
  Mat Ob(N, N);
  Ob.row(0) = C.row(0);
  for (int k = 1; k < N; ++k) Ob.row(k) = Ob.row(k - 1) * A;
  Eigen::JacobiSVD<Mat> svd(Ob, Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  const double tol = sv(0) * 1e-10;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  const Mat T = svd.matrixV();  // columns: observable basis first
  const Mat At = T.transpose() * A * T;
  const Vec Bt = T.transpose() * B.col(0);
  const RowVec Ct = C.row(0) * T;
  auto [P1, q1] = meyer_minimal(At.topLeftCorner(r, r), Bt.head(r),
                                Ct.head(r), rho);
  Mat Pf = Mat::Zero(N, N);
  Pf.topLeftCorner(r, r) = P1;
  Vec qf = Vec::Zero(N);
  qf.head(r) = q1;
  SprCertificate cert;
  cert.P = T * Pf * T.transpose();
  cert.q = T * qf;
  cert.n_obs = r;
  return cert;
}

Mat replicate_agent_certificate(const Mat& P_agent, int m, int n, int q) {
  const int blk = n + 2 * q;
  if (P_agent.rows() != blk || P_agent.cols() != blk)
    throw DimensionMismatch("replicate_agent_certificate: block size");
  const int Na = m * blk;
  auto gidx = [&](int i, int local) {
    if (local < n) return i * n + local;
    if (local < n + q) return m * n + i * q + (local - n);
    return m * n + m * q + i * q + (local - n - q);
  };
  Mat P = Mat::Zero(Na, Na);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < blk; ++a)
      for (int b = 0; b < blk; ++b)
        P(gidx(i, a), gidx(i, b)) = P_agent(a, b);
  return P;
}

}  // namespace lfsync
