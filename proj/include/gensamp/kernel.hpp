#pragma once

// Fast pointwise evaluation of the interpolating function Phi_int, built once
// per (prefilter, lambda) and reused across many reconstruction points.

#include <span>
#include <vector>

#include "gensamp/prefilter.hpp"
#include "gensamp/spectrum.hpp"

namespace gensamp {

class InterpolatingKernel {
public:
  /// Throws ResonantInterval when lambda is not admissible.
  static InterpolatingKernel build(const PrefilterSpec& spec, double lambda);
  /// Phi_{ell,int}(x) = Phi_int^{(lambda=1)}(ell x) for B-splines at lambda = 1/ell.
  static InterpolatingKernel limit(const PrefilterSpec& spec, int ell);

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;

  double lambda() const { return lambda_; }
  /// Beyond this |x| the kernel is treated as zero (infinite for slow decay).
  double radius() const { return radius_; }

private:
  enum class Kind { Pieces, Lattice, Table };

  InterpolatingKernel() = default;
  double lattice_value(double y) const;
  double table_value(double x) const;
  double direct_value(double x) const;

  Kind kind_ = Kind::Pieces;
  PrefilterSpec spec_{};
  double lambda_ = 0.0;
  double radius_ = 0.0;
  double x_scale_ = 1.0;

  std::vector<detail::SpectralPiece> pieces_;

  // Lattice form: Phi_int(x) = sum_k coeff_[k + offset] Phi(x - k h).
  double h_ = 0.0;
  long offset_ = 0;
  std::vector<double> coeff_;
  double support_ = 0.0;

  // Table form: cosine-sum samples on x >= 0, spacing table_step_.
  std::vector<double> freq_nodes_;
  std::vector<double> freq_weights_;
  double table_step_ = 0.0;
  std::vector<double> table_;
};

}  // namespace gensamp
