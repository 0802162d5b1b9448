#pragma once

// Periodized spectra, Riesz bounds, dual and interpolating spectra, the
// aliasing ratio, the resonance-limit interpolator and the odd-order
// non-centered spline pole.

#include <complex>
#include <span>
#include <vector>

#include "gensamp/grid.hpp"
#include "gensamp/prefilter.hpp"

namespace gensamp {

/// Floor on Lambda * sum |phi_hat(xi + n Lambda)|^2 (dual spectrum) and on
/// the signed V_lambda denominator.
inline constexpr double kRieszFloor = 1e-8;
/// Largest imaginary residue tolerated from the inverse transform.
inline constexpr double kSymmetryTol = 1e-8;

/// Periodization sum at a single frequency.
struct PeriodicSum {
  double total = 0.0;    ///< sum_n |phi_hat(xi + n Lambda)|^2
  double shifted = 0.0;  ///< same sum with n = 0 omitted
  int terms = 0;         ///< N_per: |n| <= terms were summed
  double remainder = 0.0;  ///< bound on the dropped part of `total`
};

/// Direct summation with a family-specific certified cut: the dropped tail
/// of Lambda * total is below `tol`.
PeriodicSum periodic_energy(const PrefilterSpec& spec, double lambda, double xi, double tol);

/// Same sum forced to |n| <= terms (no certification).
PeriodicSum periodic_energy_terms(const PrefilterSpec& spec, double lambda, double xi, int terms);

struct PeriodizedSpectrum {
  double lambda = 0.0;
  double big_lambda = 0.0;  ///< 2 pi / lambda
  std::vector<double> xi;
  std::vector<double> values;  ///< Lambda * sum_n |phi_hat(xi + n Lambda)|^2
  int truncation_terms = 0;    ///< largest N_per used over the grid
  double remainder_bound = 0.0;
};

PeriodizedSpectrum periodize(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid,
                             double tol = 1e-12);

struct RieszBounds {
  double lower;
  double upper;
};

/// Grid estimates of the Riesz bounds (min / max of the periodized spectrum).
RieszBounds riesz_bounds(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid);

/// One period [-Lambda/2, Lambda/2] sampled with `count` (odd) points.
FrequencyGrid period_grid(double lambda, std::size_t count = 20001);

std::complex<double> dual_spectrum(const PrefilterSpec& spec, double lambda, double xi,
                                   double tol = 1e-12);

/// Fourier transform of the interpolating function Phi_int.
double interp_spectrum(const PrefilterSpec& spec, double lambda, double xi, double tol = 1e-12);

/// Grid used by interp_time when none is given.
FrequencyGrid default_interp_grid(const PrefilterSpec& spec, double lambda);

/// Phi_int at `xs` by trapezoid quadrature of the inverse transform.  The
/// ideal low-pass case has a piecewise-constant spectrum and is integrated
/// exactly piece by piece instead.
std::vector<double> interp_time(const PrefilterSpec& spec, double lambda, const FrequencyGrid& grid,
                                std::span<const double> xs);
std::vector<double> interp_time(const PrefilterSpec& spec, double lambda, std::span<const double> xs);

/// Limit of the interpolating spectrum as lambda -> 1/ell (B-splines only),
/// computed from the dilated autocorrelation so no 0/0 occurs.
double interp_spectrum_limit(const PrefilterSpec& spec, int ell, double xi);
std::vector<double> interp_time_limit(const PrefilterSpec& spec, int ell, std::span<const double> xs);

/// E_lambda(xi): share of periodized energy carried by the nonzero shifts.
double aliasing_ratio(const PrefilterSpec& spec, double lambda, double xi, double tol = 1e-12);

/// (Lambda / sqrt(2 pi)) sum_n phi_hat(xi + n Lambda), signed (no modulus).
/// B-splines use the finite Poisson-dual sum sum_k phi(k lambda) e^{-i k lambda xi}.
std::complex<double> signed_denominator(const PrefilterSpec& spec, double lambda, double xi);

/// Spectrum of the V_lambda(phi) interpolator; throws PoleDetected when the
/// signed denominator vanishes.
std::complex<double> phi_int_V_spectrum(const PrefilterSpec& spec, double lambda, double xi);

struct WalterSum {
  std::complex<double> partial_sum;  ///< sum_{|n|<=N} [i (n + 1/2) pi]^{-m}
  double remainder_bound;            ///< bound on sum_{|n|>N} |term|
};

/// Partial sums of the odd-order non-centered spline denominator at xi = pi.
WalterSum walter_denominator(int m, long N);

}  // namespace gensamp

namespace gensamp::detail {

/// Constant piece of the ideal low-pass interpolating spectrum on [a, b].
struct SpectralPiece {
  double a;
  double b;
  double value;
};

std::vector<SpectralPiece> sinc_interp_pieces(double beta, double lambda);

/// (1/sqrt(2 pi)) * sum over pieces of value * int_a^b cos(x xi) dxi.
double sinc_pieces_inverse(const std::vector<SpectralPiece>& pieces, double x);

}  // namespace gensamp::detail
