#include "gensamp/zeta.hpp"

#include <array>
#include <cmath>

#include "gensamp/errors.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

// B_{2k} / (2k)! for k = 1..11.
constexpr std::array<double, 11> kBernoulliOverFactorial{
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
};

constexpr int kDirectTerms = 24;

}  // namespace

ZetaValue hurwitz_zeta(double s, double a) {
  require(s > 1.0, "zeta needs s > 1");
  require(a > 0.0, "hurwitz zeta needs a > 0");
  quad::CompensatedSum<double> acc;
  for (int n = kDirectTerms - 1; n >= 0; --n) acc.add(std::pow(n + a, -s));
  const double x = kDirectTerms + a;
  acc.add(std::pow(x, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(x, -s));

  // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}.
  double rising = s;
  double power = std::pow(x, -s - 1.0);
  const std::size_t used = kBernoulliOverFactorial.size() - 1;
  for (std::size_t k = 0; k < used; ++k) {
    acc.add(kBernoulliOverFactorial[k] * rising * power);
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    power /= x * x;
  }
  const double next = std::abs(kBernoulliOverFactorial[used] * rising * power);
  return {acc.value(), 2.0 * next};
}

double zeta(double s) { return hurwitz_zeta(s, 1.0).value; }

ZetaValue odd_zeta(double s) {
  const ZetaValue h = hurwitz_zeta(s, 0.5);
  const double scale = std::pow(2.0, -s);
  return {scale * h.value, scale * h.remainder};
}

}  // namespace gensamp
