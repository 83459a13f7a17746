#include "lfsync/lti.hpp"

#include <cmath>

#include "lfsync/errors.hpp"

namespace lfsync {

TransferFunction make_tf(const Polynomial& raw_num, const Polynomial& raw_den) {
  if (raw_den.is_zero()) throw DegenerateInput("zero denominator");
  if (raw_num.is_zero()) throw DegenerateInput("zero numerator");
  TransferFunction tf;
  const double dl = raw_den.leading();
  tf.den = poly_scale(raw_den, 1.0 / dl);
  Polynomial num = poly_scale(raw_num, 1.0 / dl);
  tf.gain = num.leading();
  tf.num = poly_scale(num, 1.0 / tf.gain);
  if (tf.num.degree() > tf.den.degree())
    throw DegenerateInput("improper transfer function");
  return tf;
}

int relative_degree(const TransferFunction& tf) {
  return tf.den.degree() - tf.num.degree();
}

StateSpaceModel realize_ccf(const TransferFunction& tf) {
  if (relative_degree(tf) < 1)
    throw NotStrictlyProper("realize_ccf needs relative degree >= 1");
  const int n = tf.den.degree();
  StateSpaceModel ss;
  ss.A = companion(tf.den);
  ss.B = Vec::Zero(n);
  ss.B(n - 1) = 1.0;
  ss.C = RowVec::Zero(n);
  for (int k = 0; k <= tf.num.degree(); ++k) ss.C(k) = tf.num.c[k];
  ss.gain = tf.gain;
  return ss;
}

bool is_hurwitz(const Polynomial& p, double eps_root) {
  if (p.is_zero()) throw DegenerateInput("is_hurwitz: zero polynomial");
  if (p.degree() < 1) throw DegenerateInput("is_hurwitz: degree >= 1 required");
  for (const auto& r : poly_roots(p))
    if (r.real() >= -eps_root) return false;
  return true;
}

bool is_spr(const TransferFunction& tf, double delta_spr, int grid_points) {
  if (relative_degree(tf) < 0) throw DegenerateInput("is_spr: improper");
  if (!is_hurwitz(tf.den)) return false;
  const int nd = relative_degree(tf);
  if (nd != 0 && nd != 1) return false;
  const double lo = -3.0, hi = 6.0;  // w in [1e-3, 1e6]
  for (int i = 0; i < grid_points; ++i) {
    const double w = std::pow(10.0, lo + (hi - lo) * i / (grid_points - 1));
    const std::complex<double> jw(0.0, w);
    const std::complex<double> v = tf.gain * tf.num(jw) / tf.den(jw);
    if (v.real() <= delta_spr / (1.0 + w * w)) return false;
  }
  return true;
}

double high_freq_gain(const TransferFunction& tf) {
  if (relative_degree(tf) != 1)
    throw WrongRelativeDegree("high_freq_gain needs relative degree 1");
  return tf.gain;
}

}  // namespace lfsync
