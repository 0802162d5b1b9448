#include "gensamp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "gensamp/errors.hpp"
#include "gensamp/kernel.hpp"
#include "gensamp/spectrum.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
// Largest distance (in x) that the sample window may extend past the evaluation window.
constexpr double kMaxMargin = 100.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

std::vector<double> Window::abscissae() const { return linspace(x_min, x_max, points); }

Window Window::central_half() const {
  const double quarter = 0.25 * (x_max - x_min);
  const std::size_t n = std::max<std::size_t>(2, (points - 1) / 2 + 1);
  return {x_min + quarter, x_max - quarter, n};
}

Window parse_window(const std::string& text) {
  std::istringstream is(text);
  Window w;
  char c1 = 0;
  char c2 = 0;
  if (!(is >> w.x_min >> c1 >> w.x_max >> c2 >> w.points) || c1 != ':' || c2 != ':' || !is.eof())
    throw PreconditionError("window must look like x0:x1:n, got '" + text + "'");
  require(w.points >= 2, "window needs at least 2 points");
  require(w.x_min < w.x_max, "window needs x0 < x1");
  return w;
}

PrefilterSpec parse_prefilter(const std::string& name, double beta, int order) {
  if (name == "sinc") return make_sinc(beta);
  if (name == "gauss") return make_gaussian(beta);
  if (name == "bspline") return make_bspline(order);
  if (name == "bspline-nc") return make_bspline_noncentered(order);
  throw PreconditionError("unknown prefilter '" + name + "'");
}

WeightSpec parse_weight(const std::string& name, double s, std::optional<double> a, const PrefilterSpec& spec) {
  if (name == "monomial") return make_monomial(s);
  if (name == "gaussexp") {
    if (a) return make_gaussexp(*a);
    if (auto* g = std::get_if<Gaussian>(&spec)) return make_gaussexp(0.5 / (g->beta * g->beta));
    throw PreconditionError("gaussexp weight needs an explicit exponent for non-Gaussian prefilters");
  }
  if (name == "sincscaled") {
    if (auto* f = std::get_if<Sinc>(&spec)) return make_sincscaled(s, f->beta);
    throw PreconditionError("sincscaled weight needs a sinc prefilter");
  }
  throw PreconditionError("unknown weight '" + name + "'");
}

nlohmann::json to_json(const PrefilterSpec& spec) {
  return std::visit(
      overloaded{[](const Sinc& f) { return nlohmann::json{{"family", "sinc"}, {"beta", f.beta}}; },
                 [](const Gaussian& f) { return nlohmann::json{{"family", "gauss"}, {"beta", f.beta}}; },
                 [](const BSplineCentered& f) { return nlohmann::json{{"family", "bspline"}, {"order", f.order}}; },
                 [](const BSplineNonCentered& f) {
                   return nlohmann::json{{"family", "bspline-nc"}, {"order", f.order}};
                 }},
      spec);
}

nlohmann::json to_json(const WeightSpec& w) {
  return std::visit(overloaded{[](const Monomial& v) { return nlohmann::json{{"kind", "monomial"}, {"s", v.s}}; },
                               [](const GaussExp& v) { return nlohmann::json{{"kind", "gaussexp"}, {"a", v.a}}; },
                               [](const SincScaled& v) {
                                 return nlohmann::json{{"kind", "sincscaled"}, {"s", v.s}, {"beta", v.beta}};
                               }},
                    w);
}

nlohmann::json to_json(const TestSignalSpec& s) {
  return std::visit(
      overloaded{[](const GaussianBump& b) {
                   return nlohmann::json{
                       {"kind", "bump"}, {"center", b.center}, {"width", b.width}, {"amplitude", b.amplitude}};
                 },
                 [](const TrigPolyEnvelope& t) {
                   nlohmann::json coeffs = nlohmann::json::array();
                   for (const auto& c : t.coefficients) coeffs.push_back({c.real(), c.imag()});
                   return nlohmann::json{
                       {"kind", "trigpoly"}, {"coefficients", coeffs}, {"envelope_width", t.envelope_width}};
                 },
                 [](const RandomSpectrum& r) {
                   return nlohmann::json{{"kind", "random"},
                                         {"seed", r.seed},
                                         {"band", r.band},
                                         {"smoothness", r.smoothness},
                                         {"bumps", r.bumps}};
                 }},
      s);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["prefilter"] = to_json(c.prefilter);
  j["lambdas"] = c.lambdas;
  j["limit_ell"] = c.limit_ell ? nlohmann::json(*c.limit_ell) : nlohmann::json(nullptr);
  j["weight"] = to_json(c.weight);
  j["signal"] = to_json(c.signal);
  j["window"] = {{"x_min", c.window.x_min}, {"x_max", c.window.x_max}, {"points", c.window.points}};
  j["tau_trunc"] = c.tau_trunc;
  j["seed"] = c.seed;
  return j;
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"spec", to_json(r.spec)},
          {"weight", to_json(r.weight)},
          {"lambda", r.lambda},
          {"m_w", r.M_w},
          {"series_value", r.series_value},
          {"bound_sq", r.bound_sq},
          {"critical_lambda", r.critical_lambda},
          {"terms_used", r.terms_used},
          {"remainder", r.remainder}};
}

FrequencyGrid signal_grid(const TestSignalSpec& signal, const PrefilterSpec& spec, double reach) {
  const double half = std::max(signal_extent(signal), 1.0);
  double spread = 0.0;
  if (auto* g = std::get_if<Gaussian>(&spec)) spread = std::sqrt(80.0) / g->beta;
  if (is_bspline(spec)) spread = spline_order(spec);
  const double period = 2.0 * (reach + signal_time_extent(signal) + spread);
  const double cap = std::holds_alternative<Sinc>(spec) ? 0.01 : 0.05;
  return FrequencyGrid::with_max_step(half, std::min(cap, 2.0 * kPi / period));
}

ReconstructionRun run_reconstruction(const PrefilterSpec& spec, double lambda, std::optional<int> ell,
                                     const TestSignalSpec& signal, const Window& window, const WeightSpec& weight,
                                     double tau) {
  validate(spec);
  validate(signal);
  const InterpolatingKernel kernel = ell ? InterpolatingKernel::limit(spec, *ell) : InterpolatingKernel::build(spec, lambda);
  ReconstructionRun run;
  run.lambda = kernel.lambda();
  const double h = run.lambda;
  run.xs = window.abscissae();

  const double reach = std::max(std::abs(window.x_min), std::abs(window.x_max)) + kMaxMargin;
  const Spectrum f = synthesize(signal, signal_grid(signal, spec, reach));
  const FilteredSignal filt = prefilter_apply(f, spec);
  run.norm = norm_phi(f, spec);
  const auto g_eval = [&filt](double x) { return filt.g_eval(x); };

  long margin = 16;
  if (auto* g = std::get_if<Gaussian>(&spec)) margin = static_cast<long>(std::ceil(12.0 / (g->beta * h)));
  const long max_margin = static_cast<long>(std::ceil(kMaxMargin / h));
  margin = std::min(margin, max_margin);
  SampleSet samples;
  for (;;) {
    run.n_min = static_cast<long>(std::floor(window.x_min / h)) - margin;
    run.n_max = static_cast<long>(std::ceil(window.x_max / h)) + margin;
    samples = sample(g_eval, h, run.n_min, run.n_max);
    try {
      run.g_tilde = reconstruct(samples, kernel, run.xs, tau);
      break;
    } catch (const TruncationBudgetExceeded&) {
      if (margin >= max_margin) throw;
      margin = std::min(2 * margin, max_margin);
    }
  }
  run.g = filt.g_eval.evaluate(run.xs);
  run.error = measure_error(g_eval, run.g_tilde, run.xs, run.norm);

  std::vector<double> lattice;
  std::vector<cplx> lattice_g;
  for (long n = static_cast<long>(std::ceil(window.x_min / h)); n <= static_cast<long>(std::floor(window.x_max / h));
       ++n) {
    lattice.push_back(static_cast<double>(n) * h);
    lattice_g.push_back(samples.values[static_cast<std::size_t>(n - run.n_min)]);
  }
  const auto lattice_tilde = reconstruct(samples, kernel, lattice, INFINITY);
  for (std::size_t i = 0; i < lattice.size(); ++i)
    run.lattice_mismatch_max = std::max(run.lattice_mismatch_max, std::abs(lattice_tilde[i] - lattice_g[i]) / run.norm);

  run.bound = general_bound(spec, weight, h);
  return run;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  std::vector<std::future<SweepRow>> pending;
  for (double lambda : config.lambdas) {
    pending.push_back(std::async(std::launch::async, [&config, lambda] {
      SweepRow row;
      row.lambda = lambda;
      try {
        const ReconstructionRun run = run_reconstruction(config.prefilter, lambda, std::nullopt, config.signal,
                                                         config.window, config.weight, config.tau_trunc);
        row.ok = true;
        row.status = "ok";
        row.sup_rel = run.error.sup_rel;
        row.bound_sqrt = std::sqrt(run.bound.bound_sq);
        row.critical_lambda = run.bound.critical_lambda;
      } catch (const std::exception& e) {
        row.ok = false;
        row.status = e.what();
        row.sup_rel = NAN;
        row.bound_sqrt = NAN;
        row.critical_lambda = NAN;
      }
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& p : pending) rows.push_back(p.get());
  return rows;
}

InterpTrace interp_trace(const PrefilterSpec& spec, double lambda, const Window& window) {
  validate(spec);
  InterpTrace t;
  std::ostringstream name;
  name.precision(12);
  name << "lambda=" << lambda;
  t.name = name.str();
  t.lambda = lambda;
  t.x = window.abscissae();
  t.phi_int = InterpolatingKernel::build(spec, lambda).evaluate(t.x);
  const double xi_max = 1.5 * 2.0 * kPi / lambda;
  t.xi = linspace(-xi_max, xi_max, window.points);
  for (double xi : t.xi) t.phi_int_hat.push_back(interp_spectrum(spec, lambda, xi));
  return t;
}

InterpTrace interp_limit_trace(const PrefilterSpec& spec, int ell, const Window& window) {
  validate(spec);
  InterpTrace t;
  t.name = "limit ell=" + std::to_string(ell);
  t.lambda = 1.0 / ell;
  t.x = window.abscissae();
  t.phi_int = InterpolatingKernel::limit(spec, ell).evaluate(t.x);
  const double xi_max = 1.5 * 2.0 * kPi * ell;
  t.xi = linspace(-xi_max, xi_max, window.points);
  for (double xi : t.xi) t.phi_int_hat.push_back(interp_spectrum_limit(spec, ell, xi));
  return t;
}

std::vector<WalterRow> walter_rows(int m, const std::vector<long>& ns) {
  std::vector<WalterRow> rows;
  for (long n : ns) {
    const WalterSum w = walter_denominator(m, n);
    rows.push_back({n, w.partial_sum.imag(), w.remainder_bound});
  }
  return rows;
}

double centered_denominator_at_pi(int m) { return signed_denominator(BSplineCentered{m}, 1.0, kPi).real(); }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return 2;
  if (dynamic_cast<const ResonantInterval*>(&e)) return 3;
  if (dynamic_cast<const DivergentMoment*>(&e)) return 4;
  if (dynamic_cast<const TruncationBudgetExceeded*>(&e)) return 5;
  if (dynamic_cast<const PoleDetected*>(&e)) return 6;
  if (dynamic_cast<const SymmetryViolation*>(&e)) return 7;
  if (dynamic_cast<const WrongFamily*>(&e)) return 8;
  return 1;
}

}  // namespace gensamp
