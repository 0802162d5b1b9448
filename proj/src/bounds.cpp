#include "gensamp/bounds.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gensamp/errors.hpp"
#include "gensamp/zeta.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ChebyshevTail chebyshev_tail(const std::function<double(double)>& density, const WeightSpec& w, double M, double t) {
  require(t > 0.0, "tail threshold must be positive");
  require(M >= 0.0, "weighted mass must be nonnegative");
  validate(w);
  boost::math::quadrature::exp_sinh<double> integrator;
  const auto both_sides = [&density](double x) { return density(x) + density(-x); };
  const double tail = integrator.integrate(both_sides, t, std::numeric_limits<double>::infinity());
  const double bound = M / weight_value(w, t);
  if (tail > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "tail " << tail << " exceeds M/w(t) = " << bound << " at t=" << t;
    throw Error(os.str());
  }
  return {tail, bound};
}

SeriesValue odd_series(const WeightSpec& w, double lambda, double tol) {
  require(lambda > 0.0, "sampling interval must be positive");
  require(tol > 0.0, "tolerance must be positive");
  validate(w);
  const double base = kPi / lambda;
  return std::visit(
      overloaded{[&](const Monomial& v) -> SeriesValue {
                   require(v.s > 1.0, "monomial series needs s > 1");
                   const ZetaValue z = odd_zeta(v.s);
                   const double scale = std::pow(base, -v.s);
                   return {scale * z.value, 0, scale * z.remainder};
                 },
                 [&](const SincScaled& v) -> SeriesValue {
                   require(v.s > 2.0, "scaled low-pass series needs s > 2");
                   const ZetaValue z = odd_zeta(v.s - 1.0);
                   const double scale = std::pow(kPi * v.beta / base, v.s - 1.0) / v.s;
                   return {scale * z.value, 0, scale * z.remainder};
                 },
                 [&](const GaussExp& v) -> SeriesValue {
                   require(v.a > 0.0, "gaussian weight series needs a > 0");
                   const double c = v.a * base * base;
                   double value = 0.0;
                   for (int n = 1;; ++n) {
                     const double term = std::exp(-c * (2.0 * n - 1.0) * (2.0 * n - 1.0));
                     value += term;
                     // Term ratios e^{-8 c n} shrink with n, so the tail is geometric.
                     const double next = std::exp(-c * (2.0 * n + 1.0) * (2.0 * n + 1.0));
                     const double ratio = std::exp(-8.0 * c * (n + 1));
                     const double rest = next / (1.0 - ratio);
                     if (rest <= tol * value || value == 0.0 || n >= 100000) return {value, n, rest};
                   }
                 }},
      w);
}

BoundReport general_bound(const PrefilterSpec& spec, const WeightSpec& w, double lambda) {
  validate(spec);
  const MomentEstimate m = moment_estimate(spec, w);
  const SeriesValue series = odd_series(w, lambda);
  BoundReport r;
  r.spec = spec;
  r.weight = w;
  r.lambda = lambda;
  r.M_w = m.value;
  r.series_value = series.value;
  r.bound_sq = 8.0 * m.value * series.value;
  r.terms_used = series.terms;
  r.remainder = 8.0 * (m.value * series.remainder + m.remainder * (series.value + series.remainder));
  r.critical_lambda = std::visit(
      overloaded{[&](const Monomial& v) {
                   return v.s == 2.0 ? critical_interval(spec, CriticalMode::Soft)
                                     : critical_interval(spec, CriticalMode::Monomial, v.s);
                 },
                 [&](const GaussExp&) {
                   return std::holds_alternative<Gaussian>(spec) ? critical_interval(spec, CriticalMode::Gaussian)
                                                                 : critical_interval(spec, CriticalMode::Soft);
                 },
                 [&](const SincScaled& v) { return 1.0 / v.beta; }},
      w);
  return r;
}

double monomial_bound(const PrefilterSpec& spec, double s, double lambda) {
  require(s > 1.0, "monomial bound needs s > 1");
  require(lambda > 0.0, "sampling interval must be positive");
  const double mu = mu_s(spec, s);
  return 8.0 * odd_zeta(s).value * std::pow(mu * lambda / kPi, s) * energy(spec);
}

double critical_interval(const PrefilterSpec& spec, CriticalMode mode, double s) {
  validate(spec);
  switch (mode) {
    case CriticalMode::Monomial:
      return kPi / mu_s(spec, s);
    case CriticalMode::Gaussian:
      if (auto* f = std::get_if<Gaussian>(&spec)) return 1.0 / f->beta;
      throw WrongFamily("gaussian critical interval needs a Gaussian prefilter, got " + describe(spec));
    case CriticalMode::Soft:
      return 1.0 / soft_bandwidth(spec);
  }
  return 0.0;
}

double gaussian_series_cap(double beta, double lambda) {
  require(beta > 0.0 && lambda > 0.0, "beta and lambda must be positive");
  if (!(lambda < 1.0 / beta)) return std::numeric_limits<double>::infinity();
  const double q = kPi / lambda;
  return 2.0 * std::exp(-q * q / (2.0 * beta * beta));
}

}  // namespace gensamp
