#pragma once

// Riemann and Hurwitz zeta by Euler-Maclaurin summation, with an explicit
// bound on the neglected correction.

namespace gensamp {

struct ZetaValue {
  double value;
  double remainder;
};

/// zeta(s, a) = sum_{n>=0} (n + a)^{-s}, s > 1, a > 0.
ZetaValue hurwitz_zeta(double s, double a);

/// zeta(s), s > 1.
double zeta(double s);

/// sum_{n>=1} (2n - 1)^{-s} = 2^{-s} zeta(s, 1/2), s > 1.
ZetaValue odd_zeta(double s);

}  // namespace gensamp
