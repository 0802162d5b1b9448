#pragma once

// Test signals, the prefilter operator, lattice sampling, the reconstruction
// series and its frequency-domain projection oracle.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "gensamp/grid.hpp"
#include "gensamp/kernel.hpp"
#include "gensamp/prefilter.hpp"

namespace gensamp {

using cplx = std::complex<double>;

struct Spectrum {
  FrequencyGrid grid;
  std::vector<cplx> values;  ///< f_hat at grid nodes
};

/// Uniform time samples starting at t0.
struct Signal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<cplx> values;
};

struct SampleSet {
  double lambda = 0.0;
  long n_min = 0;
  long n_max = -1;
  std::vector<cplx> values;  ///< g(n lambda), n = n_min..n_max
};

/// f_hat(xi) = amplitude * exp(-(xi - center)^2 / (2 width^2))
struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
};

/// f(x) = sum_j c_j e^{i j x} exp(-x^2 / (2 w^2)), j centered on zero.
struct TrigPolyEnvelope {
  std::vector<cplx> coefficients;
  double envelope_width = 1.0;
};

/// Sum of `bumps` Gaussian bumps of width `smoothness`, random complex
/// amplitudes and centers in [-band, band].
struct RandomSpectrum {
  std::uint64_t seed = 0;
  double band = 1.0;
  double smoothness = 0.5;
  int bumps = 16;
};

using TestSignalSpec = std::variant<GaussianBump, TrigPolyEnvelope, RandomSpectrum>;

void validate(const TestSignalSpec& spec);
std::string describe(const TestSignalSpec& spec);

/// Closed forms of the test signals (used by synthesize and as oracles).
cplx signal_freq(const TestSignalSpec& spec, double xi);
cplx signal_time(const TestSignalSpec& spec, double x);

/// Half width past which every bump of the signal is below e^{-40}.
double signal_extent(const TestSignalSpec& spec);
/// Same in the time domain.
double signal_time_extent(const TestSignalSpec& spec);

Spectrum synthesize(const TestSignalSpec& spec, const FrequencyGrid& grid);

/// Uniform time samples of the closed-form signal.
Signal sample_signal(const TestSignalSpec& spec, double t0, double dt, std::size_t count);

/// Inverse transform of a tabulated spectrum by composite trapezoid
/// quadrature on a (possibly clipped) uniform grid.
class SpectralFunction {
public:
  SpectralFunction() = default;
  SpectralFunction(std::vector<double> nodes, std::vector<cplx> weighted_values);

  /// (1/sqrt(2 pi)) * sum_k w_k v_k e^{i x xi_k}
  cplx operator()(double x) const;
  std::vector<cplx> evaluate(std::span<const double> xs) const;

private:
  std::vector<double> nodes_;
  std::vector<cplx> wv_;
  std::vector<char> anchor_;
  double step_ = 0.0;
};

/// Quadrature nodes for integrals against phi_hat: the full grid, or for the
/// ideal low-pass only the part inside the band with exact end points.
struct SpectralQuadrature {
  std::vector<double> xi;
  std::vector<double> weights;
  std::vector<cplx> f_hat;
};
SpectralQuadrature spectral_quadrature(const Spectrum& f, const PrefilterSpec& spec);

struct FilteredSignal {
  Spectrum g_spectrum;
  SpectralFunction g_eval;
};

/// g = P_phi f: g_hat = sqrt(2 pi) conj(phi_hat) f_hat.
FilteredSignal prefilter_apply(const Spectrum& f, const PrefilterSpec& spec);

SampleSet sample(const std::function<cplx(double)>& g_eval, double lambda, long n_min, long n_max);

inline constexpr double kTruncationBudget = 1e-8;

/// Tail estimate of the reconstruction series at x, relative to the largest
/// sample: edge sample size times the kernel mass just outside the window.
double truncation_estimate(const SampleSet& samples, const std::function<double(double)>& phi_int, double x);

/// g_tilde(x) = sum_n g(n lambda) Phi_int(x - n lambda).  Throws
/// TruncationBudgetExceeded when the tail estimate at some x exceeds tau.
std::vector<cplx> reconstruct(const SampleSet& samples, const std::function<double(double)>& phi_int,
                              std::span<const double> xs, double tau = kTruncationBudget);
/// Same, skipping terms outside the kernel's support radius.
std::vector<cplx> reconstruct(const SampleSet& samples, const InterpolatingKernel& phi_int,
                              std::span<const double> xs, double tau = kTruncationBudget);

/// (Q_lambda f)(x) from the frequency kernel
/// Q(x, eta) = sum_k e^{i x (eta - k Lambda)} |phi_hat(eta - k Lambda)|^2 / S(eta).
std::vector<cplx> project_Q(const Spectrum& f, const PrefilterSpec& spec, double lambda, std::span<const double> xs);

/// ||g||_phi through the isometry: L2 norm of f_hat on the support of phi_hat.
double norm_phi(const Spectrum& f, const PrefilterSpec& spec);

struct ErrorReport {
  double sup_abs = 0.0;
  double sup_rel = 0.0;
  std::vector<double> per_point;
};

ErrorReport measure_error(const std::function<cplx(double)>& g_eval, std::span<const cplx> g_tilde,
                          std::span<const double> xs, double norm);

}  // namespace gensamp
