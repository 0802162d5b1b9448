#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>
#include <numbers>

#include "gensamp/errors.hpp"
#include "gensamp/prefilter.hpp"

using namespace gensamp;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;

// Integral over [a, b] split at the integers so spline kinks fall on panel ends.
template <class F>
double gk(F f, double a, double b, int pieces = 64) {
  double acc = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces;
    const double hi = a + (b - a) * (i + 1) / pieces;
    acc += gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0);
  }
  return acc;
}

// Same over explicit break points.
template <class F>
double gk_breaks(F f, std::vector<double> breaks) {
  std::sort(breaks.begin(), breaks.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) acc += gauss_kronrod<double, 31>::integrate(f, breaks[i], breaks[i + 1], 0, 0);
  return acc;
}

std::complex<double> ft_by_quadrature(const PrefilterSpec& spec, double xi, double a, double b, int pieces) {
  const double re = gk([&](double x) { return eval_time(spec, x) * std::cos(xi * x); }, a, b, pieces);
  const double im = gk([&](double x) { return -eval_time(spec, x) * std::sin(xi * x); }, a, b, pieces);
  return std::complex<double>(re, im) / std::sqrt(2.0 * kPi);
}

}  // namespace

TEST_CASE("cardinal B-splines: known values, partition of unity, symmetry") {
  CHECK(cardinal_bspline(2, 1.0) == doctest::Approx(1.0));
  CHECK(cardinal_bspline(4, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cardinal_bspline(3, 1.5) == doctest::Approx(0.75));
  CHECK(cardinal_bspline(3, -0.1) == 0.0);
  CHECK(cardinal_bspline(3, 3.1) == 0.0);
  for (int m = 2; m <= 6; ++m) {
    for (double x : {0.0, 0.13, 0.5, 0.77}) {
      double sum = 0.0;
      for (int k = -m; k <= m; ++k) sum += cardinal_bspline(m, x - k);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(cardinal_bspline(m, 0.5 * m + x) == doctest::Approx(cardinal_bspline(m, 0.5 * m - x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("admissible sampling intervals") {
  CHECK(admissible(make_sinc(4), 0.25));
  CHECK_FALSE(admissible(make_sinc(4), 0.2));
  CHECK(admissible(make_gaussian(2), 10.0));
  CHECK_FALSE(admissible(make_bspline(3), 1.0 / 3.0));
  CHECK_FALSE(admissible(make_bspline(2), 0.25 + 5e-10));
  CHECK(admissible(make_bspline(2), 0.2501));
  CHECK(admissible(make_bspline(2), 0.7));
  // Monotone for the low-pass family.
  bool seen = false;
  for (double l = 0.05; l < 1.0; l += 0.01) {
    const bool a = admissible(make_sinc(4), l);
    CHECK((!seen || a));
    seen = seen || a;
  }
  CHECK_THROWS_AS(admissible(make_sinc(4), 0.0), PreconditionError);
}

TEST_CASE("constructors validate parameters") {
  CHECK_THROWS_AS(make_sinc(0.0), PreconditionError);
  CHECK_THROWS_AS(make_gaussian(-1.0), PreconditionError);
  CHECK_THROWS_AS(make_bspline(1), PreconditionError);
  CHECK_THROWS_AS(make_monomial(-1.0), PreconditionError);
}

TEST_CASE("eval_freq matches a quadrature Fourier transform of eval_time") {
  const double xis[] = {0.0, 0.7, 2.0, -3.3, 6.1};
  for (int m = 2; m <= 4; ++m) {
    const auto c = make_bspline(m);
    const auto nc = make_bspline_noncentered(m);
    for (double xi : xis) {
      const auto q = ft_by_quadrature(c, xi, -0.5 * m, 0.5 * m, m);
      CHECK(std::abs(eval_freq(c, xi) - q) < 1e-12);
      const auto qn = ft_by_quadrature(nc, xi, 0.0, m, m);
      CHECK(std::abs(eval_freq(nc, xi) - qn) < 1e-12);
    }
  }
  const auto g = make_gaussian(2.0);
  for (double xi : xis) CHECK(std::abs(eval_freq(g, xi) - ft_by_quadrature(g, xi, -10.0, 10.0, 40)) < 1e-12);
}

TEST_CASE("energies and autocorrelations") {
  CHECK(energy(make_sinc(4)) == doctest::Approx(0.25));
  CHECK(energy(make_gaussian(2)) == doctest::Approx(2.0 / (2.0 * std::sqrt(kPi))));
  CHECK(energy(make_bspline(2)) == doctest::Approx(2.0 / 3.0));
  CHECK(energy(make_bspline(3)) == doctest::Approx(11.0 / 20.0));
  CHECK(energy(make_bspline_noncentered(3)) == doctest::Approx(11.0 / 20.0));

  // Phi(x) = int phi(y) phi(y - x) dy.
  for (const auto& spec : {make_bspline(2), make_bspline(3), make_bspline_noncentered(3)}) {
    const int m = spline_order(spec);
    for (double x : {0.0, 0.4, 1.0, 1.7, 2.5}) {
      const double lo = is_centered(spec) ? -0.5 * m : 0.0;
      std::vector<double> breaks;
      for (int j = 0; j <= m; ++j) {
        breaks.push_back(lo + j);
        if (lo + j + x < lo + m) breaks.push_back(lo + j + x);
      }
      const double q = gk_breaks([&](double y) { return eval_time(spec, y) * eval_time(spec, y - x); }, breaks);
      CHECK(autocorr_time(spec, x) == doctest::Approx(q).epsilon(1e-11));
    }
  }
  const auto g = make_gaussian(2.0);
  for (double x : {0.0, 0.5, 1.3}) {
    const double q = gk([&](double y) { return eval_time(g, y) * eval_time(g, y - x); }, -12.0, 12.0, 48);
    CHECK(autocorr_time(g, x) == doctest::Approx(q).epsilon(1e-12));
  }
  // Phi_hat = sqrt(2 pi) |phi_hat|^2.
  for (double xi : {0.0, 1.0, 4.5})
    CHECK(autocorr_freq(make_bspline(3), xi) ==
          doctest::Approx(std::sqrt(2.0 * kPi) * std::norm(eval_freq(make_bspline(3), xi))));
}

TEST_CASE("moments and soft bandwidth") {
  // int xi^2 |phi_hat|^2 = ||phi'||^2: 2 for the hat function, 1 for the quadratic spline.
  CHECK(moment(make_bspline(2), make_monomial(2)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(moment(make_bspline(3), make_monomial(2)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(soft_bandwidth(make_bspline(2)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(soft_bandwidth(make_bspline(3)) * soft_bandwidth(make_bspline(3)) == doctest::Approx(20.0 / 11.0).epsilon(1e-9));
  CHECK(soft_bandwidth(make_gaussian(2)) == doctest::Approx(2.0 / std::sqrt(2.0)));
  CHECK(soft_bandwidth(make_sinc(4)) == doctest::Approx(kPi * 4.0 / std::sqrt(3.0)));
  CHECK(soft_bandwidth(make_bspline(3)) == mu_s(make_bspline(3), 2.0));

  // Quadrature oracles in the frequency domain.
  const auto g = make_gaussian(1.5);
  for (double s : {1.5, 2.0, 3.0}) {
    const double q = 2.0 * gk([&](double xi) { return std::pow(xi, s) * spectral_energy(g, xi); }, 0.0, 20.0, 40);
    CHECK(moment(g, make_monomial(s)) == doctest::Approx(q).epsilon(1e-10));
  }
  const double qa = 2.0 * gk([&](double xi) { return std::exp(0.2 * xi * xi) * spectral_energy(g, xi); }, 0.0, 30.0, 60);
  CHECK(moment(g, make_gaussexp(0.2)) == doctest::Approx(qa).epsilon(1e-10));
  const auto sc = make_sinc(4);
  const double qs = 2.0 * gk([&](double xi) { return std::pow(xi, 2.5) * spectral_energy(sc, xi); }, 0.0, 4.0 * kPi, 8);
  CHECK(moment(sc, make_monomial(2.5)) == doctest::Approx(qs).epsilon(1e-12));

  CHECK(moment(make_sinc(4), make_sincscaled(4, 4)) == doctest::Approx(0.25));
  CHECK(moment(make_gaussian(2), make_gaussexp(1.0 / 8.0)) == doctest::Approx(2.0 / std::sqrt(2.0 * kPi)));

  const auto est = moment_estimate(make_bspline(3), make_monomial(3.5));
  CHECK(est.remainder <= 1e-10 * est.value);
}

TEST_CASE("divergent moments are rejected") {
  CHECK_THROWS_AS(moment(make_bspline(2), make_monomial(3)), DivergentMoment);
  CHECK_THROWS_AS(moment(make_bspline(3), make_monomial(5)), DivergentMoment);
  CHECK_THROWS_AS(moment(make_gaussian(2), make_gaussexp(0.25)), DivergentMoment);
  CHECK_THROWS_AS(moment(make_gaussian(2), make_gaussexp(0.3)), DivergentMoment);
  CHECK_THROWS_AS(moment(make_bspline(3), make_gaussexp(0.1)), DivergentMoment);
  CHECK_NOTHROW(moment(make_bspline(3), make_monomial(4.5)));
}
