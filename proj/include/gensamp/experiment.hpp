#pragma once

// End-to-end experiments shared by the command-line tool and the tests:
// filter a test signal, sample it, reconstruct, compare against the bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gensamp/bounds.hpp"
#include "gensamp/prefilter.hpp"
#include "gensamp/sampling.hpp"

namespace gensamp {

struct Window {
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t points = 1001;

  std::vector<double> abscissae() const;
  /// Middle half of the window with the same spacing.
  Window central_half() const;
};

/// "x0:x1:n"
Window parse_window(const std::string& text);
PrefilterSpec parse_prefilter(const std::string& name, double beta, int order);
/// `a` is used for gaussexp; when absent it defaults to 1/(2 beta^2) of a
/// Gaussian prefilter.  sincscaled uses the prefilter's beta.
WeightSpec parse_weight(const std::string& name, double s, std::optional<double> a, const PrefilterSpec& spec);

struct ExperimentConfig {
  PrefilterSpec prefilter = Gaussian{2.0};
  std::vector<double> lambdas;
  std::optional<int> limit_ell;
  WeightSpec weight = GaussExp{0.125};
  TestSignalSpec signal = RandomSpectrum{};
  Window window;
  double tau_trunc = kTruncationBudget;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const PrefilterSpec& spec);
nlohmann::json to_json(const WeightSpec& w);
nlohmann::json to_json(const TestSignalSpec& s);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const BoundReport& r);

/// Frequency grid for a test signal: wide enough for its bumps, fine enough
/// that the periodic images of g at 2 pi / step lie beyond `reach`.
FrequencyGrid signal_grid(const TestSignalSpec& signal, const PrefilterSpec& spec, double reach);

struct ReconstructionRun {
  double lambda = 0.0;  ///< lattice spacing actually sampled (1/ell in limit mode)
  std::vector<double> xs;
  std::vector<cplx> g;
  std::vector<cplx> g_tilde;
  ErrorReport error;
  double norm = 0.0;
  double lattice_mismatch_max = 0.0;  ///< max |g_tilde(n lambda) - g(n lambda)| / norm inside the window
  long n_min = 0;
  long n_max = 0;
  BoundReport bound;
};

/// Samples outside the window are added until the truncation estimate is
/// below tau.  In limit mode lambda is ignored and 1/ell is used with the
/// limit interpolator.
ReconstructionRun run_reconstruction(const PrefilterSpec& spec, double lambda, std::optional<int> ell,
                                     const TestSignalSpec& signal, const Window& window, const WeightSpec& weight,
                                     double tau = kTruncationBudget);

struct SweepRow {
  double lambda = 0.0;
  bool ok = false;
  std::string status;
  double sup_rel = 0.0;
  double bound_sqrt = 0.0;
  double critical_lambda = 0.0;
};

/// Rows run concurrently and come back in input order.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

struct InterpTrace {
  std::string name;
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> phi_int;
  std::vector<double> xi;
  std::vector<double> phi_int_hat;
};

InterpTrace interp_trace(const PrefilterSpec& spec, double lambda, const Window& window);
InterpTrace interp_limit_trace(const PrefilterSpec& spec, int ell, const Window& window);

struct WalterRow {
  long N;
  double partial_sum_imag;  ///< the partial sum is purely imaginary
  double remainder_bound;
};

std::vector<WalterRow> walter_rows(int m, const std::vector<long>& ns);
/// Centered spline of the same order: signed denominator at xi = pi, lambda = 1.
double centered_denominator_at_pi(int m);

/// Process exit code for an exception thrown by the library.
int exit_code_for(const std::exception& e);

}  // namespace gensamp
