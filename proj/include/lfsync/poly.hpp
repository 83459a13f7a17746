#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

namespace lfsync {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

// Real polynomial, ascending powers: c[k] multiplies s^k.
// Invariant: trimmed, leading coefficient nonzero unless identically zero
// (the zero polynomial is stored as the single coefficient 0).
struct Polynomial {
  std::vector<double> c;

  Polynomial() : c{0.0} {}
  Polynomial(std::initializer_list<double> v) : c(v) { trim(); }
  explicit Polynomial(std::vector<double> v) : c(std::move(v)) { trim(); }

  void trim();
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.size() == 1 && c[0] == 0.0; }
  double leading() const { return c.back(); }

  double operator()(double s) const;
  std::complex<double> operator()(std::complex<double> s) const;

  bool operator==(const Polynomial& o) const { return c == o.c; }
};

Polynomial poly_convolve(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, double k);

// Long division: num = quot*den + rem, deg(rem) < deg(den).
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num,
                                              const Polynomial& den);

double poly_max_abs_diff(const Polynomial& a, const Polynomial& b);

// Companion matrix of p after monic normalization; deg(p) >= 1.
Mat companion(const Polynomial& p);

std::vector<std::complex<double>> poly_roots(const Polynomial& p);

// Monic real polynomial with the given roots (complex roots must come in
// conjugate pairs), scaled by `scale`.
Polynomial poly_from_roots(const std::vector<std::complex<double>>& roots,
                           double scale = 1.0);

// Characteristic polynomial of A, monic ascending (Faddeev-LeVerrier).
Polynomial char_poly(const Mat& A);

// Ascending numerator coefficients of C adj(sI - A) B given the ascending
// characteristic polynomial d of A; also used to build the power basis
// R_k with adj(sI - A) = sum_k s^k R_k.
std::vector<Vec> adjugate_basis(const Mat& A, const Vec& B,
                                const Polynomial& d);

}  // namespace lfsync
