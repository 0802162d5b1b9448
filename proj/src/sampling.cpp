#include "gensamp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gensamp/errors.hpp"
#include "gensamp/quadrature.hpp"
#include "gensamp/spectrum.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Every test signal is a finite sum of these in the frequency domain:
// f_hat(xi) = amp * exp(-(xi - center)^2 / (2 width^2)).
struct Bump {
  double center;
  double width;
  cplx amp;
};

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Bump> expand(const TestSignalSpec& spec) {
  return std::visit(
      overloaded{[](const GaussianBump& s) { return std::vector<Bump>{{s.center, s.width, s.amplitude}}; },
                 [](const TrigPolyEnvelope& s) {
                   std::vector<Bump> out;
                   const double mid = 0.5 * (static_cast<double>(s.coefficients.size()) - 1.0);
                   const double w = s.envelope_width;
                   for (std::size_t j = 0; j < s.coefficients.size(); ++j)
                     out.push_back({static_cast<double>(j) - mid, 1.0 / w, s.coefficients[j] * w});
                   return out;
                 },
                 [](const RandomSpectrum& s) {
                   std::mt19937_64 rng(s.seed);
                   std::vector<Bump> out;
                   for (int i = 0; i < s.bumps; ++i) {
                     const double c = s.band * (2.0 * unit_uniform(rng) - 1.0);
                     const double re = 2.0 * unit_uniform(rng) - 1.0;
                     const double im = 2.0 * unit_uniform(rng) - 1.0;
                     out.push_back({c, s.smoothness, {re, im}});
                   }
                   return out;
                 }},
      spec);
}

cplx bumps_freq(const std::vector<Bump>& bumps, double xi) {
  cplx acc = 0.0;
  for (const auto& b : bumps) {
    const double u = (xi - b.center) / b.width;
    acc += b.amp * std::exp(-0.5 * u * u);
  }
  return acc;
}

cplx phi_hat_inside(const PrefilterSpec& spec, double xi) {
  if (auto* f = std::get_if<Sinc>(&spec)) return 1.0 / (kSqrt2Pi * f->beta);
  return eval_freq(spec, xi);
}

}  // namespace

void validate(const TestSignalSpec& spec) {
  std::visit(overloaded{[](const GaussianBump& s) { require(s.width > 0.0, "bump width must be positive"); },
                        [](const TrigPolyEnvelope& s) {
                          require(s.envelope_width > 0.0, "envelope width must be positive");
                        },
                        [](const RandomSpectrum& s) {
                          require(s.band >= 0.0, "random spectrum band must be nonnegative");
                          require(s.smoothness > 0.0, "random spectrum smoothness must be positive");
                          require(s.bumps >= 1, "random spectrum needs at least one bump");
                        }},
             spec);
}

std::string describe(const TestSignalSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const GaussianBump& s) {
                          os << "bump(center=" << s.center << ",width=" << s.width << ",amplitude=" << s.amplitude
                             << ")";
                        },
                        [&](const TrigPolyEnvelope& s) {
                          os << "trigpoly(terms=" << s.coefficients.size() << ",envelope=" << s.envelope_width << ")";
                        },
                        [&](const RandomSpectrum& s) {
                          os << "random(seed=" << s.seed << ",band=" << s.band << ",smoothness=" << s.smoothness
                             << ",bumps=" << s.bumps << ")";
                        }},
             spec);
  return os.str();
}

cplx signal_freq(const TestSignalSpec& spec, double xi) { return bumps_freq(expand(spec), xi); }

cplx signal_time(const TestSignalSpec& spec, double x) {
  cplx acc = 0.0;
  for (const auto& b : expand(spec))
    acc += b.amp * b.width * std::polar(std::exp(-0.5 * b.width * b.width * x * x), b.center * x);
  return acc;
}

double signal_extent(const TestSignalSpec& spec) {
  double r = 0.0;
  for (const auto& b : expand(spec)) r = std::max(r, std::abs(b.center) + b.width * std::sqrt(80.0));
  return r;
}

double signal_time_extent(const TestSignalSpec& spec) {
  double r = 0.0;
  for (const auto& b : expand(spec)) r = std::max(r, std::sqrt(80.0) / b.width);
  return r;
}

Spectrum synthesize(const TestSignalSpec& spec, const FrequencyGrid& grid) {
  validate(spec);
  const auto bumps = expand(spec);
  Spectrum out{grid, std::vector<cplx>(grid.count())};
  for (std::size_t k = 0; k < grid.count(); ++k) out.values[k] = bumps_freq(bumps, grid.at(k));
  return out;
}

Signal sample_signal(const TestSignalSpec& spec, double t0, double dt, std::size_t count) {
  require(dt > 0.0, "time step must be positive");
  Signal s{t0, dt, std::vector<cplx>(count)};
  for (std::size_t i = 0; i < count; ++i) s.values[i] = signal_time(spec, t0 + static_cast<double>(i) * dt);
  return s;
}

SpectralFunction::SpectralFunction(std::vector<double> nodes, std::vector<cplx> weighted_values)
    : nodes_(std::move(nodes)), wv_(std::move(weighted_values)), anchor_(nodes_.size(), 0) {
  require(nodes_.size() == wv_.size(), "spectral nodes and values differ in length");
  if (nodes_.size() >= 3)
    step_ = nodes_[2] - nodes_[1];
  else if (nodes_.size() == 2)
    step_ = nodes_[1] - nodes_[0];
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const bool irregular = k > 0 && std::abs(nodes_[k] - nodes_[k - 1] - step_) > 1e-9 * std::abs(step_);
    anchor_[k] = (k % 256 == 0 || irregular) ? 1 : 0;
  }
}

cplx SpectralFunction::operator()(double x) const {
  const cplx rot = std::polar(1.0, x * step_);
  cplx phase;
  quad::CompensatedSum<cplx> acc;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (anchor_[k])
      phase = std::polar(1.0, x * nodes_[k]);
    else
      phase *= rot;
    acc.add(wv_[k] * phase);
  }
  return acc.value() / kSqrt2Pi;
}

std::vector<cplx> SpectralFunction::evaluate(std::span<const double> xs) const {
  std::vector<cplx> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

SpectralQuadrature spectral_quadrature(const Spectrum& f, const PrefilterSpec& spec) {
  require(f.values.size() == f.grid.count(), "spectrum length differs from its grid");
  const FrequencyGrid& g = f.grid;
  const double dxi = g.step();
  SpectralQuadrature q;
  const auto* sinc = std::get_if<Sinc>(&spec);
  if (!sinc || g.half_width() <= kPi * sinc->beta) {
    for (std::size_t k = 0; k < g.count(); ++k) {
      q.xi.push_back(g.at(k));
      q.weights.push_back(dxi * g.trapezoid_weight(k));
      q.f_hat.push_back(f.values[k]);
    }
    return q;
  }

  // Clip to the band; end points get linearly interpolated values.
  const double band = kPi * sinc->beta;
  const double eps = 1e-12 * band;
  std::size_t lo = 0;
  while (g.at(lo) <= -band + eps) ++lo;
  std::size_t hi = g.count() - 1;
  while (g.at(hi) >= band - eps) --hi;
  const auto edge_value = [&](std::size_t outside, std::size_t inside, double edge) {
    const double t = (edge - g.at(outside)) / (g.at(inside) - g.at(outside));
    return (1.0 - t) * f.values[outside] + t * f.values[inside];
  };
  const double left_gap = g.at(lo) + band;
  const double right_gap = band - g.at(hi);
  q.xi.push_back(-band);
  q.weights.push_back(0.5 * left_gap);
  q.f_hat.push_back(edge_value(lo - 1, lo, -band));
  for (std::size_t k = lo; k <= hi; ++k) {
    double w = (k == lo || k == hi) ? 0.5 * dxi : dxi;
    if (lo == hi) w = 0.0;
    if (k == lo) w += 0.5 * left_gap;
    if (k == hi) w += 0.5 * right_gap;
    q.xi.push_back(g.at(k));
    q.weights.push_back(w);
    q.f_hat.push_back(f.values[k]);
  }
  q.xi.push_back(band);
  q.weights.push_back(0.5 * right_gap);
  q.f_hat.push_back(edge_value(hi + 1, hi, band));
  return q;
}

FilteredSignal prefilter_apply(const Spectrum& f, const PrefilterSpec& spec) {
  validate(spec);
  FilteredSignal out{Spectrum{f.grid, std::vector<cplx>(f.grid.count())}, {}};
  for (std::size_t k = 0; k < f.grid.count(); ++k)
    out.g_spectrum.values[k] = kSqrt2Pi * std::conj(eval_freq(spec, f.grid.at(k))) * f.values[k];

  const SpectralQuadrature q = spectral_quadrature(f, spec);
  std::vector<cplx> wv(q.xi.size());
  for (std::size_t k = 0; k < q.xi.size(); ++k)
    wv[k] = q.weights[k] * kSqrt2Pi * std::conj(phi_hat_inside(spec, q.xi[k])) * q.f_hat[k];
  out.g_eval = SpectralFunction(q.xi, std::move(wv));
  return out;
}

SampleSet sample(const std::function<cplx(double)>& g_eval, double lambda, long n_min, long n_max) {
  require(lambda > 0.0, "sampling interval must be positive");
  require(n_min <= n_max, "sample range is empty");
  SampleSet s{lambda, n_min, n_max, {}};
  s.values.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (long n = n_min; n <= n_max; ++n) s.values.push_back(g_eval(static_cast<double>(n) * lambda));
  return s;
}

double truncation_estimate(const SampleSet& samples, const std::function<double(double)>& phi_int, double x) {
  constexpr long kEdge = 3;
  constexpr long kWidth = 64;
  double scale = 0.0;
  for (const auto& v : samples.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  const long count = static_cast<long>(samples.values.size());
  double left = 0.0;
  double right = 0.0;
  for (long i = 0; i < std::min(kEdge, count); ++i) {
    left = std::max(left, std::abs(samples.values[static_cast<std::size_t>(i)]));
    right = std::max(right, std::abs(samples.values[static_cast<std::size_t>(count - 1 - i)]));
  }
  double left_mass = 0.0;
  double right_mass = 0.0;
  for (long j = 1; j <= kWidth; ++j) {
    left_mass += std::abs(phi_int(x - static_cast<double>(samples.n_min - j) * samples.lambda));
    right_mass += std::abs(phi_int(x - static_cast<double>(samples.n_max + j) * samples.lambda));
  }
  return (left * left_mass + right * right_mass) / scale;
}

namespace {

void check_budget(const SampleSet& samples, const std::function<double(double)>& phi_int,
                  std::span<const double> xs, double tau) {
  for (double x : xs) {
    const double est = truncation_estimate(samples, phi_int, x);
    if (est > tau) {
      std::ostringstream os;
      os.precision(6);
      os << "truncation tail estimate " << est << " at x=" << x << " exceeds " << tau << " for samples ["
         << samples.n_min << ", " << samples.n_max << "]";
      throw TruncationBudgetExceeded(os.str());
    }
  }
}

}  // namespace

std::vector<cplx> reconstruct(const SampleSet& samples, const std::function<double(double)>& phi_int,
                              std::span<const double> xs, double tau) {
  require(samples.values.size() == static_cast<std::size_t>(samples.n_max - samples.n_min + 1),
          "sample count differs from its index range");
  check_budget(samples, phi_int, xs, tau);
  std::vector<cplx> out;
  out.reserve(xs.size());
  for (double x : xs) {
    quad::CompensatedSum<cplx> acc;
    for (long n = samples.n_min; n <= samples.n_max; ++n)
      acc.add(samples.values[static_cast<std::size_t>(n - samples.n_min)] *
              phi_int(x - static_cast<double>(n) * samples.lambda));
    out.push_back(acc.value());
  }
  return out;
}

std::vector<cplx> reconstruct(const SampleSet& samples, const InterpolatingKernel& phi_int,
                              std::span<const double> xs, double tau) {
  require(samples.values.size() == static_cast<std::size_t>(samples.n_max - samples.n_min + 1),
          "sample count differs from its index range");
  const std::function<double(double)> fn = [&phi_int](double x) { return phi_int(x); };
  check_budget(samples, fn, xs, tau);
  const double r = phi_int.radius();
  const double lambda = samples.lambda;
  std::vector<cplx> out;
  out.reserve(xs.size());
  for (double x : xs) {
    long lo = samples.n_min;
    long hi = samples.n_max;
    if (std::isfinite(r)) {
      lo = std::max(lo, static_cast<long>(std::ceil((x - r) / lambda)));
      hi = std::min(hi, static_cast<long>(std::floor((x + r) / lambda)));
    }
    quad::CompensatedSum<cplx> acc;
    for (long n = lo; n <= hi; ++n)
      acc.add(samples.values[static_cast<std::size_t>(n - samples.n_min)] * phi_int(x - static_cast<double>(n) * lambda));
    out.push_back(acc.value());
  }
  return out;
}

std::vector<cplx> project_Q(const Spectrum& f, const PrefilterSpec& spec, double lambda, std::span<const double> xs) {
  validate(spec);
  if (!admissible(spec, lambda)) {
    std::ostringstream os;
    os.precision(17);
    os << "sampling interval " << lambda << " is not admissible for " << describe(spec);
    throw ResonantInterval(os.str());
  }
  const double big = 2.0 * kPi / lambda;
  const SpectralQuadrature q = spectral_quadrature(f, spec);
  const bool is_sinc = std::holds_alternative<Sinc>(spec);

  // Per node: c_k = w f_hat conj(phi_hat) and the shift weights r_kj.
  struct Node {
    double eta;
    cplx c;
    long j0;
    std::vector<double> r;
  };
  std::vector<Node> nodes;
  long jmax = 0;
  for (std::size_t k = 0; k < q.xi.size(); ++k) {
    const cplx c = q.weights[k] * q.f_hat[k] * std::conj(phi_hat_inside(spec, q.xi[k]));
    if (c == 0.0) continue;
    // Edge nodes of the low-pass band are nudged inside so the box is closed there.
    const double eta = is_sinc ? q.xi[k] * (1.0 - 1e-13) : q.xi[k];
    const PeriodicSum s = periodic_energy(spec, lambda, eta, 1e-14);
    if (!(s.total > 0.0)) continue;
    const long N = s.terms + 1;
    Node node{q.xi[k], c, -N, {}};
    for (long j = -N; j <= N; ++j) node.r.push_back(spectral_energy(spec, eta - static_cast<double>(j) * big) / s.total);
    jmax = std::max(jmax, N);
    nodes.push_back(std::move(node));
  }

  std::vector<cplx> out;
  out.reserve(xs.size());
  std::vector<cplx> shift(static_cast<std::size_t>(2 * jmax + 1));
  for (double x : xs) {
    for (long j = -jmax; j <= jmax; ++j)
      shift[static_cast<std::size_t>(j + jmax)] = std::polar(1.0, -x * static_cast<double>(j) * big);
    quad::CompensatedSum<cplx> acc;
    for (const auto& node : nodes) {
      cplx inner = 0.0;
      for (std::size_t i = 0; i < node.r.size(); ++i)
        inner += node.r[i] * shift[static_cast<std::size_t>(node.j0 + static_cast<long>(i) + jmax)];
      acc.add(node.c * std::polar(1.0, x * node.eta) * inner);
    }
    out.push_back(acc.value());
  }
  return out;
}

double norm_phi(const Spectrum& f, const PrefilterSpec& spec) {
  const SpectralQuadrature q = spectral_quadrature(f, spec);
  quad::CompensatedSum<double> acc;
  for (std::size_t k = 0; k < q.xi.size(); ++k) acc.add(q.weights[k] * std::norm(q.f_hat[k]));
  return std::sqrt(acc.value());
}

ErrorReport measure_error(const std::function<cplx(double)>& g_eval, std::span<const cplx> g_tilde,
                          std::span<const double> xs, double norm) {
  require(norm > 0.0, "error normalization must be positive");
  require(g_tilde.size() == xs.size(), "reconstruction and abscissae differ in length");
  ErrorReport r;
  r.per_point.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = std::abs(g_eval(xs[i]) - g_tilde[i]);
    r.per_point.push_back(e);
    r.sup_abs = std::max(r.sup_abs, e);
  }
  r.sup_rel = r.sup_abs / norm;
  return r;
}

}  // namespace gensamp
