#pragma once

// Error bounds for the reconstruction series: the weighted Chebyshev tail
// inequality, the general odd-series estimate and its monomial and Gaussian
// specializations, and critical sampling intervals.

#include <functional>

#include "gensamp/prefilter.hpp"

namespace gensamp {

/// All bound values are per unit ||g||_phi^2.
struct BoundReport {
  PrefilterSpec spec;
  WeightSpec weight;
  double lambda = 0.0;
  double M_w = 0.0;
  double series_value = 0.0;
  double bound_sq = 0.0;
  double critical_lambda = 0.0;
  int terms_used = 0;
  double remainder = 0.0;
};

struct ChebyshevTail {
  double tail;   ///< int_{|x| >= t} density
  double bound;  ///< M / w(t)
};

/// Throws Error if the computed tail exceeds the bound.
ChebyshevTail chebyshev_tail(const std::function<double(double)>& density, const WeightSpec& w, double M, double t);

struct SeriesValue {
  double value;
  int terms;
  double remainder;
};

/// sum_{n>=1} 1 / w((2n - 1) pi / lambda).
SeriesValue odd_series(const WeightSpec& w, double lambda, double tol = 1e-12);

/// bound_sq = 8 M_w(phi) * odd_series.  Throws DivergentMoment.
BoundReport general_bound(const PrefilterSpec& spec, const WeightSpec& w, double lambda);

/// 8 (1 - 2^{-s}) zeta(s) (mu_s lambda / pi)^s ||phi||^2.
double monomial_bound(const PrefilterSpec& spec, double s, double lambda);

enum class CriticalMode { Monomial, Gaussian, Soft };

/// Monomial: pi / mu_s.  Gaussian: 1 / beta (Gaussian prefilter only).  Soft: 1 / sigma.
double critical_interval(const PrefilterSpec& spec, CriticalMode mode, double s = 2.0);

/// 2 exp(-(pi/lambda)^2 / (2 beta^2)) when lambda < 1/beta, which dominates the
/// GaussExp(1/(2 beta^2)) series; returns infinity otherwise.
double gaussian_series_cap(double beta, double lambda);

}  // namespace gensamp
