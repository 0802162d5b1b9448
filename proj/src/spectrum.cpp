#include "gensamp/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "gensamp/errors.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double big_lambda_of(double lambda) { return 2.0 * kPi / lambda; }

// Bound on Lambda * sum_{|n|>N} |phi_hat(xi + n Lambda)|^2 for order-m splines,
// from sinc^{2m}(u/2) <= (2/|u|)^{2m}.
double spline_tail(int m, double big_lambda, double xi, long N) {
  const double t0 = (N + 1) * big_lambda - std::abs(xi);
  if (t0 <= 0.0) return INFINITY;
  const double scale = std::pow(4.0, m) / kPi;
  return big_lambda * scale *
         (std::pow(t0, -2.0 * m) + std::pow(t0, 1.0 - 2.0 * m) / ((2.0 * m - 1.0) * big_lambda));
}

double gaussian_tail(double beta, double big_lambda, double xi, long N) {
  const double t0 = (N + 1) * big_lambda - std::abs(xi);
  if (t0 <= 0.0) return INFINITY;
  const double b2 = beta * beta;
  const double first = std::exp(-t0 * t0 / b2) / (2.0 * kPi);
  const double ratio = std::exp(-2.0 * t0 * big_lambda / b2);
  return big_lambda * 2.0 * first / (1.0 - ratio);
}

struct TermRange {
  long lo;
  long hi;
  double remainder;
};

TermRange certified_range(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  const double big = big_lambda_of(lambda);
  if (auto* f = std::get_if<Sinc>(&spec)) {
    const double band = kPi * f->beta;
    // Half-open box [-band, band) so that shifted boxes tile without double counting.
    return {static_cast<long>(std::ceil((-band - xi) / big)), static_cast<long>(std::ceil((band - xi) / big)) - 1,
            0.0};
  }
  if (auto* f = std::get_if<Gaussian>(&spec)) {
    const long N = static_cast<long>(
        std::ceil((std::abs(xi) + f->beta * std::sqrt(2.0 * std::log(1.0 / tol))) / big));
    return {-N, N, gaussian_tail(f->beta, big, xi, N)};
  }
  const int m = spline_order(spec);
  long lo = static_cast<long>(std::ceil(std::abs(xi) / big));
  long hi = std::max<long>(lo, 1);
  while (spline_tail(m, big, xi, hi) >= tol) hi *= 2;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (spline_tail(m, big, xi, mid) < tol)
      hi = mid;
    else
      lo = mid + 1;
  }
  return {-hi, hi, spline_tail(m, big, xi, hi)};
}

PeriodicSum sum_range(const PrefilterSpec& spec, double lambda, double xi, long lo, long hi) {
  const double big = big_lambda_of(lambda);
  quad::CompensatedSum<double> shifted;
  double centre = 0.0;
  // Outermost terms first so small contributions are not swamped.
  for (long n = lo; n < 0; ++n) shifted.add(spectral_energy(spec, xi + n * big));
  for (long n = hi; n > 0; --n) shifted.add(spectral_energy(spec, xi + n * big));
  if (lo <= 0 && hi >= 0) centre = spectral_energy(spec, xi);
  PeriodicSum out;
  out.shifted = shifted.value();
  out.total = out.shifted + centre;
  out.terms = static_cast<int>(std::max(std::abs(lo), std::abs(hi)));
  return out;
}

// Splines: sum_n |phi_hat(xi + n Lambda)|^2 = (1/Lambda) sum_k Phi(k lambda) e^{-i k lambda xi},
// a finite sum because Phi vanishes outside [-m, m].  Declines (returns
// nothing) where cancellation among the taps would cost relative accuracy.
std::optional<double> spline_total_poisson(const PrefilterSpec& spec, double lambda, double xi) {
  const int m = spline_order(spec);
  const long taps = static_cast<long>(std::floor(m / lambda));
  const double theta = lambda * xi;
  const double c1 = std::cos(theta);
  double prev = 1.0;  // cos(0)
  double cur = c1;
  double value = autocorr_time(spec, 0.0);
  double scale = value;
  for (long k = 1; k <= taps; ++k) {
    const double a = autocorr_time(spec, k * lambda);
    value += 2.0 * a * cur;
    scale += 2.0 * std::abs(a);
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
  const double err = std::numeric_limits<double>::epsilon() * scale * static_cast<double>(taps + 1);
  if (!(value > 1e10 * err)) return std::nullopt;
  return value / big_lambda_of(lambda);
}

// Sum for the interpolating spectrum and the aliasing ratio.
PeriodicSum fast_periodic_energy(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  if (is_bspline(spec)) {
    if (auto total = spline_total_poisson(spec, lambda, xi)) {
      PeriodicSum s;
      s.total = *total;
      s.shifted = std::max(0.0, *total - spectral_energy(spec, xi));
      return s;
    }
  }
  return periodic_energy(spec, lambda, xi, tol);
}

void require_admissible(const PrefilterSpec& spec, double lambda) {
  if (!admissible(spec, lambda)) {
    std::ostringstream os;
    os.precision(17);
    os << "sampling interval " << lambda << " is not admissible for " << describe(spec);
    throw ResonantInterval(os.str());
  }
}

}  // namespace

FrequencyGrid::FrequencyGrid(double half_width, std::size_t count) : half_width_(half_width), count_(count) {
  require(half_width > 0.0, "frequency grid half width must be positive");
  require(count >= 3 && count % 2 == 1, "frequency grid count must be odd and >= 3");
}

FrequencyGrid FrequencyGrid::with_max_step(double half_width, double max_step) {
  require(max_step > 0.0, "grid step must be positive");
  auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half_width / max_step));
  if (intervals % 2 == 1) ++intervals;
  return FrequencyGrid(half_width, std::max<std::size_t>(intervals, 2) + 1);
}

PeriodicSum periodic_energy(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  require(lambda > 0.0, "sampling interval must be positive");
  require(tol > 0.0, "tolerance must be positive");
  const TermRange r = certified_range(spec, lambda, xi, tol);
  PeriodicSum s = sum_range(spec, lambda, xi, r.lo, r.hi);
  s.remainder = r.remainder;
  return s;
}

PeriodicSum periodic_energy_terms(const PrefilterSpec& spec, double lambda, double xi, int terms) {
  require(lambda > 0.0, "sampling interval must be positive");
  return sum_range(spec, lambda, xi, -terms, terms);
}

PeriodizedSpectrum periodize(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid, double tol) {
  PeriodizedSpectrum out;
  out.lambda = lambda;
  out.big_lambda = big_lambda_of(lambda);
  out.xi.resize(grid.count());
  out.values.resize(grid.count());
  for (std::size_t k = 0; k < grid.count(); ++k) {
    const double xi = grid.at(k);
    const PeriodicSum s = periodic_energy(spec, lambda, xi, tol);
    out.xi[k] = xi;
    out.values[k] = out.big_lambda * s.total;
    out.truncation_terms = std::max(out.truncation_terms, s.terms);
    out.remainder_bound = std::max(out.remainder_bound, s.remainder);
  }
  return out;
}

FrequencyGrid period_grid(double lambda, std::size_t count) {
  return FrequencyGrid(0.5 * big_lambda_of(lambda), count);
}

RieszBounds riesz_bounds(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid) {
  const PeriodizedSpectrum p = periodize(spec, lambda, grid);
  const auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
  return {*lo, *hi};
}

std::complex<double> dual_spectrum(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  require_admissible(spec, lambda);
  const PeriodicSum s = periodic_energy(spec, lambda, xi, tol);
  const double denom = big_lambda_of(lambda) * s.total;
  if (!(denom >= kRieszFloor)) {
    std::ostringstream os;
    os.precision(17);
    os << "periodized spectrum " << denom << " below the Riesz floor at xi=" << xi << " for lambda=" << lambda;
    throw ResonantInterval(os.str());
  }
  return eval_freq(spec, xi) / denom;
}

double interp_spectrum(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  require_admissible(spec, lambda);
  if (auto* f = std::get_if<Gaussian>(&spec)) {
    // Ratio of Gaussians in log form: no underflow far from the origin.
    const double big = big_lambda_of(lambda);
    const TermRange r = certified_range(spec, lambda, xi, tol);
    const double b2 = f->beta * f->beta;
    const auto exponent = [&](long n) {
      const double shifted = xi + n * big;
      return (xi - shifted) * (xi + shifted) / b2;
    };
    double top = 0.0;
    for (long n = r.lo; n <= r.hi; ++n) top = std::max(top, exponent(n));
    quad::CompensatedSum<double> acc;
    for (long n = r.lo; n <= r.hi; ++n) acc.add(std::exp(exponent(n) - top));
    return lambda / kSqrt2Pi * std::exp(-top) / acc.value();
  }
  const PeriodicSum s = fast_periodic_energy(spec, lambda, xi, tol);
  if (!(s.total > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "periodized spectrum vanishes at xi=" << xi << " for lambda=" << lambda;
    throw ResonantInterval(os.str());
  }
  const double centre = s.total - s.shifted;
  return lambda / kSqrt2Pi * (centre / s.total);
}

FrequencyGrid default_interp_grid(const PrefilterSpec& spec, double lambda) {
  require_admissible(spec, lambda);
  const double big = big_lambda_of(lambda);
  if (auto* f = std::get_if<Sinc>(&spec)) return FrequencyGrid::with_max_step(kPi * f->beta, 0.01);
  if (auto* f = std::get_if<Gaussian>(&spec))
    return FrequencyGrid::with_max_step(10.0 * f->beta, std::min(0.01, big / 200.0));

  // Splines: align the grid with whole periods so lattice points are exact.
  const int n_per = periodic_energy(spec, lambda, 0.0, 1e-10).terms;
  const double reach = std::max(40.0 * kPi, big * (n_per + 1));
  const long K = static_cast<long>(std::ceil(reach / big - 0.5));
  double step = std::min(0.01, big / 200.0);
  const double ell = std::round(1.0 / lambda);
  if (ell >= 2.0) step = std::min(step, std::abs(big - 2.0 * kPi * ell) / 10.0);
  auto per_period = static_cast<std::size_t>(std::ceil(big / step));
  if (per_period % 2 == 1) ++per_period;
  return FrequencyGrid((K + 0.5) * big, static_cast<std::size_t>(2 * K + 1) * per_period + 1);
}

std::vector<double> interp_time(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid,
                                std::span<const double> xs) {
  require_admissible(spec, lambda);
  if (auto* f = std::get_if<Sinc>(&spec)) {
    const auto pieces = detail::sinc_interp_pieces(f->beta, lambda);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(detail::sinc_pieces_inverse(pieces, x));
    return out;
  }

  const std::size_t n = grid.count();
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = interp_spectrum(spec, lambda, grid.at(k)) * grid.trapezoid_weight(k);
  if (is_centered(spec)) {
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double avg = 0.5 * (h[k] + h[n - 1 - k]);
      h[k] = h[n - 1 - k] = avg;
    }
  }

  const double step = grid.step();
  const double scale = step / kSqrt2Pi;
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const std::complex<double> rot = std::polar(1.0, x * step);
    std::complex<double> phase;
    quad::CompensatedSum<std::complex<double>> acc;
    for (std::size_t k = 0; k < n; ++k) {
      if (k % 256 == 0)
        phase = std::polar(1.0, x * grid.at(k));
      else
        phase *= rot;
      acc.add(h[k] * phase);
    }
    const std::complex<double> v = scale * acc.value();
    if (std::abs(v.imag()) > kSymmetryTol) {
      std::ostringstream os;
      os.precision(17);
      os << "imaginary residue " << v.imag() << " at x=" << x << " exceeds tolerance; refine the grid";
      throw SymmetryViolation(os.str());
    }
    out.push_back(v.real());
  }
  return out;
}

std::vector<double> interp_time(const PrefilterSpec& spec, double lambda, std::span<const double> xs) {
  return interp_time(spec, lambda, default_interp_grid(spec, lambda), xs);
}

double interp_spectrum_limit(const PrefilterSpec& spec, int ell, double xi) {
  if (!is_bspline(spec)) throw WrongFamily("resonance limit is defined for B-spline prefilters only");
  require(ell >= 2, "resonance index ell must be >= 2");
  // Phi_ell(x) = Phi(ell x) sampled at 1/ell is the lambda = 1 problem, dilated.
  return interp_spectrum(spec, 1.0, xi / ell) / ell;
}

std::vector<double> interp_time_limit(const PrefilterSpec& spec, int ell, std::span<const double> xs) {
  if (!is_bspline(spec)) throw WrongFamily("resonance limit is defined for B-spline prefilters only");
  require(ell >= 2, "resonance index ell must be >= 2");
  std::vector<double> scaled(xs.begin(), xs.end());
  for (double& x : scaled) x *= ell;
  return interp_time(spec, 1.0, scaled);
}

double aliasing_ratio(const PrefilterSpec& spec, double lambda, double xi, double tol) {
  require_admissible(spec, lambda);
  const PeriodicSum s = fast_periodic_energy(spec, lambda, xi, tol);
  if (!(s.total > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "periodized spectrum vanishes at xi=" << xi << " for lambda=" << lambda;
    throw ResonantInterval(os.str());
  }
  return std::clamp(s.shifted / s.total, 0.0, 1.0);
}

std::complex<double> signed_denominator(const PrefilterSpec& spec, double lambda, double xi) {
  require(lambda > 0.0, "sampling interval must be positive");
  const double big = big_lambda_of(lambda);
  if (is_bspline(spec)) {
    const int m = spline_order(spec);
    const bool centred = is_centered(spec);
    const double lo = centred ? -0.5 * m : 0.0;
    const double hi = centred ? 0.5 * m : static_cast<double>(m);
    quad::CompensatedSum<std::complex<double>> acc;
    for (long k = static_cast<long>(std::ceil(lo / lambda)); k <= static_cast<long>(std::floor(hi / lambda)); ++k)
      acc.add(eval_time(spec, k * lambda) * std::polar(1.0, -k * lambda * xi));
    return acc.value();
  }
  const TermRange r = certified_range(spec, lambda, xi, 1e-300);
  quad::CompensatedSum<std::complex<double>> acc;
  for (long n = r.lo; n <= r.hi; ++n) acc.add(eval_freq(spec, xi + n * big));
  return big / kSqrt2Pi * acc.value();
}

std::complex<double> phi_int_V_spectrum(const PrefilterSpec& spec, double lambda, double xi) {
  const std::complex<double> denom = signed_denominator(spec, lambda, xi);
  if (!(std::abs(denom) >= kRieszFloor)) {
    std::ostringstream os;
    os.precision(17);
    os << "signed denominator |" << std::abs(denom) << "| vanishes at xi=" << xi << " for lambda=" << lambda;
    throw PoleDetected(os.str());
  }
  return eval_freq(spec, xi) / denom;
}

WalterSum walter_denominator(int m, long N) {
  require(m >= 3 && m % 2 == 1, "walter denominator needs odd order m >= 3");
  require(N >= 0, "partial-sum index must be nonnegative");
  quad::CompensatedSum<double> acc;
  for (long n = -N; n <= N; ++n) acc.add(std::pow((n + 0.5) * kPi, -m));
  // i^{-m} is -i for m = 1 (mod 4) and +i for m = 3 (mod 4).
  const double sign = (m % 4 == 1) ? -1.0 : 1.0;
  const double rem = 2.0 * std::pow(kPi, -m) * std::pow(N + 0.5, 1.0 - m) / (m - 1.0);
  return {std::complex<double>(0.0, sign * acc.value()), rem};
}

namespace detail {

std::vector<SpectralPiece> sinc_interp_pieces(double beta, double lambda) {
  const double band = kPi * beta;
  const double big = big_lambda_of(lambda);
  std::vector<double> cuts{-band, band};
  for (long n = -static_cast<long>(std::ceil(2.0 * band / big)) - 1; n <= static_cast<long>(std::ceil(2.0 * band / big)) + 1;
       ++n) {
    for (double edge : {-band + n * big, band + n * big})
      if (edge > -band && edge < band) cuts.push_back(edge);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());
  std::vector<SpectralPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double c = 0.5 * (cuts[i] + cuts[i + 1]);
    long count = 0;
    for (long n = static_cast<long>(std::ceil((-band - c) / big)); n <= static_cast<long>(std::floor((band - c) / big)); ++n)
      ++count;
    pieces.push_back({cuts[i], cuts[i + 1], lambda / (kSqrt2Pi * static_cast<double>(count))});
  }
  return pieces;
}

double sinc_pieces_inverse(const std::vector<SpectralPiece>& pieces, double x) {
  double acc = 0.0;
  for (const auto& p : pieces) {
    const double width = p.b - p.a;
    acc += p.value * width * std::cos(0.5 * x * (p.a + p.b)) * sinc_unnormalized(0.5 * x * width);
  }
  return acc / kSqrt2Pi;
}

}  // namespace detail

}  // namespace gensamp
