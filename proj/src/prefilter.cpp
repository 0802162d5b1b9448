#include "gensamp/prefilter.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "gensamp/errors.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// int_{-inf}^{inf} |xi|^p sinc^{2m}(xi/2) dxi / (2 pi), p < 2m - 1.
MomentEstimate spline_monomial_moment(int m, double p) {
  const double q = p - 2.0 * m;
  auto integrand = [m, p](double xi) {
    return std::pow(xi, p) * std::pow(sinc_unnormalized(0.5 * xi), 2 * m);
  };
  const auto& rule = quad::gauss_legendre(24);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
    return half * s;
  };

  quad::CompensatedSum<double> acc;
  // Geometric grading toward 0 keeps the |xi|^p kink resolved.
  for (int j = 40; j >= 1; --j)
    acc.add(panel(2.0 * kPi * std::ldexp(1.0, -j), 2.0 * kPi * std::ldexp(1.0, -j + 1)));
  long done = 1;
  auto advance_to = [&](long periods) {
    for (; done < periods; ++done)
      acc.add(panel(2.0 * kPi * done, 2.0 * kPi * (done + 1)));
  };
  const double scale = std::pow(4.0, m);
  const double mean = binomial(2 * m, m) / scale;  // mean of sin^{2m}
  auto tail = [&](double cut) {
    return scale / kPi * mean * std::pow(cut, q + 1.0) / (-q - 1.0);
  };
  auto osc_bound = [&](double cut) { return 2.0 * scale * std::pow(cut, q); };

  advance_to(64);
  double est = acc.value() / kPi + tail(2.0 * kPi * done);
  const double needed = std::pow(osc_bound(1.0) / (kMomentTol * est), 1.0 / -q);
  const long periods =
      std::min<long>(2'000'000, std::max<long>(64, static_cast<long>(std::ceil(needed / (2.0 * kPi)))));
  advance_to(periods);
  const double cut = 2.0 * kPi * done;
  return {acc.value() / kPi + tail(cut), osc_bound(cut)};
}

MomentEstimate monomial_moment(const PrefilterSpec& spec, double s) {
  return std::visit(
      overloaded{
          [s](const Sinc& f) -> MomentEstimate {
            const double band = kPi * f.beta;
            return {std::pow(band, s + 1.0) / ((s + 1.0) * kPi * f.beta * f.beta), 0.0};
          },
          [s](const Gaussian& f) -> MomentEstimate {
            return {std::pow(f.beta, s + 1.0) * std::tgamma(0.5 * (s + 1.0)) / (2.0 * kPi), 0.0};
          },
          [s, &spec](const auto&) -> MomentEstimate {
            const int m = spline_order(spec);
            if (!(s < 2.0 * m - 1.0)) {
              std::ostringstream os;
              os << "moment of |xi|^" << s << " diverges for B-spline order " << m
                 << " (needs s < " << 2 * m - 1 << ")";
              throw DivergentMoment(os.str());
            }
            return spline_monomial_moment(m, s);
          }},
      spec);
}

}  // namespace

PrefilterSpec make_sinc(double beta) {
  PrefilterSpec s = Sinc{beta};
  validate(s);
  return s;
}
PrefilterSpec make_gaussian(double beta) {
  PrefilterSpec s = Gaussian{beta};
  validate(s);
  return s;
}
PrefilterSpec make_bspline(int order) {
  PrefilterSpec s = BSplineCentered{order};
  validate(s);
  return s;
}
PrefilterSpec make_bspline_noncentered(int order) {
  PrefilterSpec s = BSplineNonCentered{order};
  validate(s);
  return s;
}
WeightSpec make_monomial(double s) {
  WeightSpec w = Monomial{s};
  validate(w);
  return w;
}
WeightSpec make_gaussexp(double a) {
  WeightSpec w = GaussExp{a};
  validate(w);
  return w;
}
WeightSpec make_sincscaled(double s, double beta) {
  WeightSpec w = SincScaled{s, beta};
  validate(w);
  return w;
}

void validate(const PrefilterSpec& spec) {
  std::visit(overloaded{
                 [](const Sinc& f) { require(f.beta > 0.0, "sinc prefilter needs beta > 0"); },
                 [](const Gaussian& f) { require(f.beta > 0.0, "gaussian prefilter needs beta > 0"); },
                 [](const BSplineCentered& f) { require(f.order >= 2, "B-spline order must be >= 2"); },
                 [](const BSplineNonCentered& f) { require(f.order >= 2, "B-spline order must be >= 2"); }},
             spec);
}

void validate(const WeightSpec& w) {
  std::visit(overloaded{
                 [](const Monomial& v) { require(v.s > 1.0, "monomial weight needs s > 1"); },
                 [](const GaussExp& v) { require(v.a > 0.0, "gaussian weight needs a > 0"); },
                 [](const SincScaled& v) {
                   require(v.s > 2.0, "sinc-scaled weight needs s > 2");
                   require(v.beta > 0.0, "sinc-scaled weight needs beta > 0");
                 }},
             w);
}

std::string describe(const PrefilterSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const Sinc& f) { os << "sinc(beta=" << f.beta << ")"; },
                        [&](const Gaussian& f) { os << "gauss(beta=" << f.beta << ")"; },
                        [&](const BSplineCentered& f) { os << "bspline(m=" << f.order << ")"; },
                        [&](const BSplineNonCentered& f) { os << "bspline-nc(m=" << f.order << ")"; }},
             spec);
  return os.str();
}

std::string describe(const WeightSpec& w) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const Monomial& v) { os << "monomial(s=" << v.s << ")"; },
                        [&](const GaussExp& v) { os << "gaussexp(a=" << v.a << ")"; },
                        [&](const SincScaled& v) {
                          os << "sincscaled(s=" << v.s << ",beta=" << v.beta << ")";
                        }},
             w);
  return os.str();
}

bool is_bspline(const PrefilterSpec& spec) {
  return std::holds_alternative<BSplineCentered>(spec) ||
         std::holds_alternative<BSplineNonCentered>(spec);
}

int spline_order(const PrefilterSpec& spec) {
  if (auto* c = std::get_if<BSplineCentered>(&spec)) return c->order;
  if (auto* n = std::get_if<BSplineNonCentered>(&spec)) return n->order;
  return 0;
}

bool is_centered(const PrefilterSpec& spec) {
  return !std::holds_alternative<BSplineNonCentered>(spec);
}

double cardinal_bspline(int m, double x) {
  if (!(x >= 0.0 && x < m)) return 0.0;
  std::vector<double> b(m);
  for (int j = 0; j < m; ++j) {
    const double y = x - j;
    b[j] = (y >= 0.0 && y < 1.0) ? 1.0 : 0.0;
  }
  for (int k = 2; k <= m; ++k) {
    for (int j = 0; j + k <= m; ++j) {
      const double y = x - j;
      b[j] = (y * b[j] + (k - y) * b[j + 1]) / (k - 1);
    }
  }
  return b[0];
}

double sinc_unnormalized(double u) {
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

double eval_time(const PrefilterSpec& spec, double x) {
  return std::visit(
      overloaded{[x](const Sinc& f) { return sinc_unnormalized(kPi * f.beta * x); },
                 [x](const Gaussian& f) {
                   return f.beta / kSqrt2Pi * std::exp(-0.5 * f.beta * f.beta * x * x);
                 },
                 [x](const BSplineCentered& f) { return cardinal_bspline(f.order, x + 0.5 * f.order); },
                 [x](const BSplineNonCentered& f) { return cardinal_bspline(f.order, x); }},
      spec);
}

std::complex<double> eval_freq(const PrefilterSpec& spec, double xi) {
  return std::visit(
      overloaded{[xi](const Sinc& f) -> std::complex<double> {
                   return std::abs(xi) <= kPi * f.beta ? 1.0 / (kSqrt2Pi * f.beta) : 0.0;
                 },
                 [xi](const Gaussian& f) -> std::complex<double> {
                   return std::exp(-xi * xi / (2.0 * f.beta * f.beta)) / kSqrt2Pi;
                 },
                 [xi](const BSplineCentered& f) -> std::complex<double> {
                   return std::pow(sinc_unnormalized(0.5 * xi), f.order) / kSqrt2Pi;
                 },
                 [xi](const BSplineNonCentered& f) -> std::complex<double> {
                   const double mag = std::pow(sinc_unnormalized(0.5 * xi), f.order) / kSqrt2Pi;
                   return std::polar(1.0, -0.5 * f.order * xi) * mag;
                 }},
      spec);
}

double spectral_energy(const PrefilterSpec& spec, double xi) {
  return std::visit(
      overloaded{[xi](const Sinc& f) {
                   return std::abs(xi) <= kPi * f.beta ? 1.0 / (2.0 * kPi * f.beta * f.beta) : 0.0;
                 },
                 [xi](const Gaussian& f) { return std::exp(-xi * xi / (f.beta * f.beta)) / (2.0 * kPi); },
                 [xi, &spec](const auto&) {
                   return std::pow(sinc_unnormalized(0.5 * xi), 2 * spline_order(spec)) / (2.0 * kPi);
                 }},
      spec);
}

double autocorr_freq(const PrefilterSpec& spec, double xi) {
  return kSqrt2Pi * spectral_energy(spec, xi);
}

double autocorr_time(const PrefilterSpec& spec, double x) {
  return std::visit(
      overloaded{[x](const Sinc& f) { return sinc_unnormalized(kPi * f.beta * x) / f.beta; },
                 [x](const Gaussian& f) {
                   return f.beta / (2.0 * std::sqrt(kPi)) * std::exp(-0.25 * f.beta * f.beta * x * x);
                 },
                 [x, &spec](const auto&) {
                   const int m = spline_order(spec);
                   return cardinal_bspline(2 * m, x + m);
                 }},
      spec);
}

double energy(const PrefilterSpec& spec) { return autocorr_time(spec, 0.0); }

bool admissible(const PrefilterSpec& spec, double lambda) {
  require(lambda > 0.0, "sampling interval must be positive");
  return std::visit(overloaded{[lambda](const Sinc& f) { return lambda * f.beta >= 1.0 - 1e-12; },
                               [](const Gaussian&) { return true; },
                               [lambda](const auto&) {
                                 const double ell = std::round(1.0 / lambda);
                                 if (ell < 2.0) return true;
                                 return std::abs(lambda - 1.0 / ell) >= kAdmissibleTol;
                               }},
                    spec);
}

double weight_value(const WeightSpec& w, double xi) {
  const double a = std::abs(xi);
  return std::visit(overloaded{[a](const Monomial& v) { return std::pow(a, v.s); },
                               [a](const GaussExp& v) { return std::exp(v.a * a * a); },
                               [a](const SincScaled& v) {
                                 return v.s * std::pow(kPi * v.beta, 1.0 - v.s) * std::pow(a, v.s - 1.0);
                               }},
                    w);
}

MomentEstimate moment_estimate(const PrefilterSpec& spec, const WeightSpec& w) {
  validate(spec);
  validate(w);
  return std::visit(
      overloaded{
          [&spec](const Monomial& v) { return monomial_moment(spec, v.s); },
          [&spec](const SincScaled& v) {
            const double coef = v.s * std::pow(kPi * v.beta, 1.0 - v.s);
            MomentEstimate m = monomial_moment(spec, v.s - 1.0);
            return MomentEstimate{coef * m.value, coef * m.remainder};
          },
          [&spec](const GaussExp& v) -> MomentEstimate {
            if (auto* f = std::get_if<Sinc>(&spec)) {
              const double band = kPi * f->beta;
              const double a = v.a;
              const double half = quad::integrate([a](double xi) { return std::exp(a * xi * xi); }, 0.0,
                                                  band, 64, 20);
              return {2.0 * half / (2.0 * kPi * f->beta * f->beta), 0.0};
            }
            if (auto* f = std::get_if<Gaussian>(&spec)) {
              const double rate = 1.0 / (f->beta * f->beta) - v.a;
              if (!(rate > 0.0))
                throw DivergentMoment("gaussian weight exp(a xi^2) needs a < 1/beta^2 on a gaussian prefilter");
              return {std::sqrt(kPi / rate) / (2.0 * kPi), 0.0};
            }
            throw DivergentMoment("gaussian weight moment diverges for B-spline prefilters");
          }},
      w);
}

double moment(const PrefilterSpec& spec, const WeightSpec& w) { return moment_estimate(spec, w).value; }

double mu_s(const PrefilterSpec& spec, double s) {
  require(s > 1.0, "mu_s needs s > 1");
  return std::pow(moment(spec, Monomial{s}) / energy(spec), 1.0 / s);
}

double soft_bandwidth(const PrefilterSpec& spec) { return mu_s(spec, 2.0); }

}  // namespace gensamp
