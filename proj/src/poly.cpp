#include "lfsync/poly.hpp"

#include <cmath>

#include "lfsync/errors.hpp"

namespace lfsync {

void Polynomial::trim() {
  if (c.empty()) {
    c = {0.0};
    return;
  }
  size_t n = c.size();
  while (n > 1 && c[n - 1] == 0.0) --n;
  c.resize(n);
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
  return acc;
}

Polynomial poly_convolve(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  std::vector<double> out(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  return Polynomial(std::move(out));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) out[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out[i] += b.c[i];
  return Polynomial(std::move(out));
}

Polynomial poly_scale(const Polynomial& a, double k) {
  std::vector<double> out = a.c;
  for (double& v : out) v *= k;
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num,
                                              const Polynomial& den) {
  if (den.is_zero()) throw DegenerateInput("polynomial division by zero");
  const int dn = den.degree();
  std::vector<double> r = num.c;
  std::vector<double> q(std::max<int>(num.degree() - dn + 1, 1), 0.0);
  const double lead = den.leading();
  while (static_cast<int>(r.size()) - 1 >= dn) {
    const int k = static_cast<int>(r.size()) - 1 - dn;
    const double c = r.back() / lead;
    q[k] = c;
    for (int i = 0; i <= dn; ++i) r[k + i] -= c * den.c[i];
    r.pop_back();
    if (r.empty()) break;
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

double poly_max_abs_diff(const Polynomial& a, const Polynomial& b) {
  double m = 0.0;
  const size_t n = std::max(a.c.size(), b.c.size());
  for (size_t k = 0; k < n; ++k) {
    const double av = k < a.c.size() ? a.c[k] : 0.0;
    const double bv = k < b.c.size() ? b.c[k] : 0.0;
    m = std::max(m, std::abs(av - bv));
  }
  return m;
}

Mat companion(const Polynomial& p) {
  if (p.degree() < 1) throw DegenerateInput("companion needs degree >= 1");
  const int n = p.degree();
  const double lead = p.leading();
  Mat A = Mat::Zero(n, n);
  if (n > 1) A.topRightCorner(n - 1, n - 1).setIdentity();
  for (int j = 0; j < n; ++j) A(n - 1, j) = -p.c[j] / lead;
  return A;
}

std::vector<std::complex<double>> poly_roots(const Polynomial& p) {
  if (p.degree() < 1) return {};
  Eigen::EigenSolver<Mat> es(companion(p), /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out(p.degree());
  for (int i = 0; i < p.degree(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

Polynomial poly_from_roots(const std::vector<std::complex<double>>& roots,
                           double scale) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out[k] = c[k].real() * scale;
  return Polynomial(std::move(out));
}

Polynomial char_poly(const Mat& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("char_poly: square only");
  const int n = static_cast<int>(A.rows());
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Mat M = Mat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    Mat AM = A * M;
    const double ck = -AM.trace() / k;
    c[n - k] = ck;
    M = AM + ck * Mat::Identity(n, n);
  }
  return Polynomial(std::move(c));
}

std::vector<Vec> adjugate_basis(const Mat& A, const Vec& B,
                                const Polynomial& d) {
  const int n = static_cast<int>(A.rows());
  if (d.degree() != n) throw DimensionMismatch("adjugate_basis: degree != n");
  std::vector<Vec> V(n);
  Mat R = Mat::Identity(n, n);
  V[n - 1] = R * B;
  for (int k = n - 1; k >= 1; --k) {
    R = R * A + d.c[k] * Mat::Identity(n, n);
    V[k - 1] = R * B;
  }
  return V;
}

}  // namespace lfsync
