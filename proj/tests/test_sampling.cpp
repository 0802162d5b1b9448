#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "gensamp/errors.hpp"
#include "gensamp/experiment.hpp"
#include "gensamp/kernel.hpp"
#include "gensamp/sampling.hpp"

using namespace gensamp;

namespace {

constexpr double kPi = std::numbers::pi;

Spectrum spectrum_of(const PrefilterSpec& spec, const FrequencyGrid& grid) {
  Spectrum s{grid, std::vector<cplx>(grid.count())};
  for (std::size_t k = 0; k < grid.count(); ++k) s.values[k] = eval_freq(spec, grid.at(k));
  return s;
}

}  // namespace

TEST_CASE("synthesize") {
  const FrequencyGrid grid(10.0, 2001);
  const auto bump = synthesize(GaussianBump{0.0, 1.0, 1.0}, grid);
  for (std::size_t k = 0; k < grid.count(); ++k) CHECK(bump.values[k] == bump.values[grid.count() - 1 - k]);

  const RandomSpectrum r{7, 4.0, 0.5, 16};
  CHECK(synthesize(r, grid).values == synthesize(r, grid).values);
  CHECK(synthesize(RandomSpectrum{8, 4.0, 0.5, 16}, grid).values != synthesize(r, grid).values);

  const auto zero = synthesize(TrigPolyEnvelope{{0.0, 0.0, 0.0}, 1.0}, grid);
  for (const auto& v : zero.values) CHECK(v == 0.0);

  // Closed forms are a transform pair.
  for (const TestSignalSpec& s : {TestSignalSpec{r}, TestSignalSpec{GaussianBump{1.5, 0.7, 2.0}},
                                  TestSignalSpec{TrigPolyEnvelope{{1.0, {0.0, 2.0}, -0.5}, 3.0}}}) {
    for (double x : {0.0, 0.8, -2.1}) {
      const auto re = [&](double xi) { return (signal_freq(s, xi) * std::polar(1.0, x * xi)).real(); };
      const auto im = [&](double xi) { return (signal_freq(s, xi) * std::polar(1.0, x * xi)).imag(); };
      double qr = 0.0;
      double qi = 0.0;
      for (int i = 0; i < 60; ++i) {
        qr += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(re, -15.0 + 0.5 * i, -14.5 + 0.5 * i, 0, 0);
        qi += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(im, -15.0 + 0.5 * i, -14.5 + 0.5 * i, 0, 0);
      }
      CHECK(std::abs(signal_time(s, x) - cplx(qr, qi) / std::sqrt(2.0 * kPi)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(synthesize(GaussianBump{0.0, 0.0, 1.0}, grid), PreconditionError);
}

TEST_CASE("prefilter_apply") {
  SUBCASE("f = phi gives the autocorrelation") {
    for (const auto& spec : {make_gaussian(2), make_bspline(3), make_sinc(4)}) {
      const FrequencyGrid grid(std::holds_alternative<Sinc>(spec) ? 20.0 : 200.0, 40001);
      const auto g = prefilter_apply(spectrum_of(spec, grid), spec);
      // Sampling phi_hat of the low-pass filter on the grid blurs its band edge by one step.
      const double tol = std::holds_alternative<Gaussian>(spec) ? 1e-10 : 1e-5;
      CHECK(std::abs(g.g_eval(0.0) - energy(spec)) < tol);
      CHECK(std::abs(g.g_eval(0.7) - autocorr_time(spec, 0.7)) < tol);
    }
  }
  SUBCASE("spectrum outside the low-pass band is annihilated") {
    const auto f = synthesize(GaussianBump{30.0, 1.0, 1.0}, FrequencyGrid(50.0, 10001));
    const auto g = prefilter_apply(f, make_sinc(4));
    for (double x : {0.0, 1.0, 3.3}) CHECK(std::abs(g.g_eval(x)) < 1e-60);
  }
  SUBCASE("agrees with the time-domain crosscorrelation") {
    const RandomSpectrum r{11, 3.0, 0.6, 8};
    for (const auto& spec : {make_gaussian(2), make_bspline(2), make_bspline_noncentered(3)}) {
      const auto f = synthesize(r, signal_grid(r, spec, 20.0));
      const auto g = prefilter_apply(f, spec);
      for (double x : {0.0, 0.45, -1.7}) {
        const auto integrand = [&](double y, bool imag) {
          const cplx v = signal_time(r, y) * eval_time(spec, y - x);
          return imag ? v.imag() : v.real();
        };
        double qr = 0.0;
        double qi = 0.0;
        for (int i = 0; i < 64; ++i) {
          const double a = x - 16.0 + 0.5 * i;
          qr += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
              [&](double y) { return integrand(y, false); }, a, a + 0.5, 0, 0);
          qi += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
              [&](double y) { return integrand(y, true); }, a, a + 0.5, 0, 0);
        }
        CHECK(std::abs(g.g_eval(x) - cplx(qr, qi)) < 1e-6);
      }
    }
  }
  SUBCASE("linear in f") {
    const FrequencyGrid grid(12.0, 2401);
    const auto a = synthesize(RandomSpectrum{1, 3.0, 0.5, 8}, grid);
    const auto b = synthesize(RandomSpectrum{2, 3.0, 0.5, 8}, grid);
    Spectrum sum{grid, std::vector<cplx>(grid.count())};
    for (std::size_t k = 0; k < grid.count(); ++k) sum.values[k] = 2.0 * a.values[k] - cplx(0.0, 1.0) * b.values[k];
    const auto spec = make_bspline(3);
    const auto ga = prefilter_apply(a, spec);
    const auto gb = prefilter_apply(b, spec);
    const auto gs = prefilter_apply(sum, spec);
    for (double x : {0.0, 1.2}) CHECK(std::abs(gs.g_eval(x) - (2.0 * ga.g_eval(x) - cplx(0.0, 1.0) * gb.g_eval(x))) < 1e-12);
  }
}

TEST_CASE("sample") {
  const auto g = [](double x) { return cplx(std::exp(-x * x), x); };
  const auto s = sample(g, 0.3, -4, 6);
  CHECK(s.values.size() == 11);
  for (long n = -4; n <= 6; ++n) CHECK(s.values[static_cast<std::size_t>(n + 4)] == g(n * 0.3));
  const auto shifted = sample([&](double x) { return g(x - 0.3); }, 0.3, -4, 6);
  for (std::size_t i = 1; i < shifted.values.size(); ++i) CHECK(std::abs(shifted.values[i] - s.values[i - 1]) < 1e-15);
  for (const auto& v : sample([](double) { return cplx(0.0); }, 0.5, 0, 10).values) CHECK(v == 0.0);
  CHECK_THROWS_AS(sample(g, 0.3, 5, 4), PreconditionError);
}

TEST_CASE("reconstruct") {
  SUBCASE("one nonzero sample reproduces the kernel") {
    const auto k = InterpolatingKernel::build(make_bspline(3), 0.45);
    SampleSet s{0.45, -3, 3, std::vector<cplx>(7, 0.0)};
    s.values[3] = cplx(2.0, -1.0);
    const std::vector<double> xs{-0.3, 0.0, 0.2, 1.1};
    const auto r = reconstruct(s, k, xs, INFINITY);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(r[i] - cplx(2.0, -1.0) * k(xs[i])) < 1e-15);
  }
  SUBCASE("exact in the span of Phi shifts") {
    for (const auto& [spec, lambda] : {std::pair{make_bspline(2), 0.45}, std::pair{make_gaussian(2), 0.5}}) {
      std::vector<double> c(21);
      for (int n = 0; n < 21; ++n) c[static_cast<std::size_t>(n)] = std::sin(1.7 * n + 0.3);
      const auto g = [&](double x) {
        cplx acc = 0.0;
        for (int n = -10; n <= 10; ++n) acc += c[static_cast<std::size_t>(n + 10)] * autocorr_time(spec, x - n * lambda);
        return acc;
      };
      const auto k = InterpolatingKernel::build(spec, lambda);
      const auto s = sample(g, lambda, -80, 80);
      std::vector<double> xs;
      for (double x = -2.5; x <= 2.5; x += 0.05) xs.push_back(x);
      const auto r = reconstruct(s, k, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(r[i] - g(xs[i])) < 1e-6);
      // Lattice points are reproduced.
      std::vector<double> lattice;
      for (int n = -5; n <= 5; ++n) lattice.push_back(n * lambda);
      const auto rl = reconstruct(s, k, lattice);
      for (int n = -5; n <= 5; ++n) CHECK(std::abs(rl[static_cast<std::size_t>(n + 5)] - s.values[static_cast<std::size_t>(n + 80)]) < 1e-9);
    }
  }
  SUBCASE("linear in the samples, and the function form agrees") {
    const auto k = InterpolatingKernel::build(make_gaussian(2), 0.4);
    SampleSet a{0.4, -30, 30, {}};
    SampleSet b{0.4, -30, 30, {}};
    SampleSet ab{0.4, -30, 30, {}};
    for (int n = -30; n <= 30; ++n) {
      a.values.push_back(std::exp(-0.05 * n * n));
      b.values.push_back(cplx(0.0, std::exp(-0.08 * n * n)));
      ab.values.push_back(3.0 * a.values.back() + b.values.back());
    }
    const std::vector<double> xs{-1.0, 0.1, 2.2};
    const auto ra = reconstruct(a, k, xs);
    const auto rb = reconstruct(b, k, xs);
    const auto rab = reconstruct(ab, k, xs);
    const auto rf = reconstruct(a, [&k](double x) { return k(x); }, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(std::abs(rab[i] - (3.0 * ra[i] + rb[i])) < 1e-13);
      CHECK(std::abs(rf[i] - ra[i]) < 1e-13);
    }
  }
  SUBCASE("too narrow a sample window is rejected") {
    const auto k = InterpolatingKernel::build(make_sinc(4), 0.25);
    SampleSet s{0.25, -10, 10, std::vector<cplx>(21, 1.0)};
    const std::vector<double> xs{0.1};
    CHECK_THROWS_AS(reconstruct(s, k, xs), TruncationBudgetExceeded);
    CHECK_NOTHROW(reconstruct(s, k, xs, 10.0));
  }
}

TEST_CASE("projection oracle") {
  SUBCASE("zero in, zero out") {
    const Spectrum f{FrequencyGrid(10.0, 101), std::vector<cplx>(101, 0.0)};
    const std::vector<double> xs{0.0, 1.0};
    for (const auto& v : project_Q(f, make_bspline(2), 0.45, xs)) CHECK(v == 0.0);
  }
  SUBCASE("idempotent on V_lambda(phi)") {
    const auto spec = make_gaussian(2);
    const double lambda = 0.5;
    const FrequencyGrid grid(40.0, 8001);
    Spectrum f{grid, std::vector<cplx>(grid.count())};
    for (std::size_t k = 0; k < grid.count(); ++k) {
      const double xi = grid.at(k);
      cplx series = 0.0;
      for (int n = -6; n <= 6; ++n) series += std::cos(0.9 * n) * std::polar(1.0, -n * lambda * xi);
      f.values[k] = eval_freq(spec, xi) * series;
    }
    std::vector<double> xs;
    for (double x = -3.0; x <= 3.0; x += 0.25) xs.push_back(x);
    const auto q = project_Q(f, spec, lambda, xs);
    const auto g = prefilter_apply(f, spec);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(q[i] - g.g_eval(xs[i])) < 1e-6);
  }
  SUBCASE("agrees with sample-and-reconstruct") {
    const RandomSpectrum r{5, 6.0, 0.5, 16};
    for (const auto& [spec, lambda] : {std::pair{make_bspline(2), 0.3}, std::pair{make_sinc(4), 0.3}}) {
      const Window w{-2.0, 2.0, 41};
      const auto run = run_reconstruction(spec, lambda, std::nullopt, r, w, make_monomial(2));
      const auto f = synthesize(r, signal_grid(r, spec, 110.0));
      const auto q = project_Q(f, spec, lambda, run.xs);
      for (std::size_t i = 0; i < run.xs.size(); ++i) CHECK(std::abs(q[i] - run.g_tilde[i]) < 1e-5);
    }
  }
  CHECK_THROWS_AS(project_Q(Spectrum{FrequencyGrid(1.0, 3), {0.0, 0.0, 0.0}}, make_bspline(2), 0.5, std::vector<double>{0.0}),
                  ResonantInterval);
}

TEST_CASE("norm through the isometry") {
  for (const auto& spec : {make_gaussian(2), make_sinc(4)}) {
    const FrequencyGrid grid(40.0, 16001);
    const auto f = spectrum_of(spec, grid);
    const double tol = std::holds_alternative<Sinc>(spec) ? 1e-4 : 1e-8;
    CHECK(norm_phi(f, spec) == doctest::Approx(std::sqrt(energy(spec))).epsilon(tol));
    Spectrum scaled = f;
    for (auto& v : scaled.values) v *= cplx(-3.0, 4.0);
    CHECK(norm_phi(scaled, spec) == doctest::Approx(5.0 * norm_phi(f, spec)));
  }
  // Only in-band energy counts for the low-pass prefilter.
  const FrequencyGrid grid(30.0, 6001);
  const auto f = synthesize(GaussianBump{12.566370614359172, 0.5, 1.0}, grid);
  const double full = norm_phi(f, make_gaussian(100.0));
  CHECK(norm_phi(f, make_sinc(4)) == doctest::Approx(full / std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("measure_error") {
  const auto g = [](double x) { return cplx(std::cos(x), 0.0); };
  const std::vector<double> xs{0.0, 0.5, 1.0};
  std::vector<cplx> exact;
  for (double x : xs) exact.push_back(g(x));
  const auto zero = measure_error(g, exact, xs, 1.0);
  CHECK(zero.sup_abs == 0.0);
  auto off = exact;
  off[1] += 0.25;
  const auto e1 = measure_error(g, off, xs, 1.0);
  const auto e2 = measure_error(g, off, xs, 2.0);
  CHECK(e1.sup_abs == doctest::Approx(0.25));
  CHECK(e2.sup_rel == doctest::Approx(0.5 * e1.sup_rel));
  CHECK(e1.per_point[1] == doctest::Approx(0.25));
  CHECK_THROWS_AS(measure_error(g, off, xs, 0.0), PreconditionError);
}

TEST_CASE("Gaussian reconstruction error obeys the closed-form estimate") {
  const double beta = 2.0;
  const double lambda = 0.25;
  const double cap = 16.0 * beta / std::sqrt(2.0 * kPi) * std::exp(-std::pow(kPi / lambda, 2) / (2.0 * beta * beta));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto run = run_reconstruction(make_gaussian(beta), lambda, std::nullopt, RandomSpectrum{seed, 10.0, 1.0, 16},
                                        Window{}, make_gaussexp(1.0 / 8.0));
    CHECK(run.error.sup_rel * run.error.sup_rel <= cap);
    CHECK(run.lattice_mismatch_max < 1e-9);
  }
}
