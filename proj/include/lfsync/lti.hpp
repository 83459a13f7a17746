#pragma once

#include "lfsync/poly.hpp"

namespace lfsync {

// Rational SISO model; num and den monic, the scalar gain carried separately
// (high-frequency gain for relative degree one).
struct TransferFunction {
  Polynomial num;
  Polynomial den;
  double gain = 1.0;
};

// Normalizes raw numerator/denominator into the monic-monic-gain convention.
TransferFunction make_tf(const Polynomial& raw_num, const Polynomial& raw_den);

int relative_degree(const TransferFunction& tf);

struct StateSpaceModel {
  Mat A;
  Vec B;
  RowVec C;
  double gain = 1.0;  // output is gain * C * x
};

// Controllable canonical form: A companion of den, B = e_n, C = num padded.
StateSpaceModel realize_ccf(const TransferFunction& tf);

bool is_hurwitz(const Polynomial& p, double eps_root = 1e-9);

// Frequency-grid SPR test: den Hurwitz, relative degree in {0, 1}, and
// Re[tf(jw)] > delta/(1 + w^2) on a log grid w in [1e-3, 1e6].
bool is_spr(const TransferFunction& tf, double delta_spr = 1e-9,
            int grid_points = 2000);

double high_freq_gain(const TransferFunction& tf);

}  // namespace lfsync
