#include "gensamp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "gensamp/errors.hpp"
#include "gensamp/quadrature.hpp"

namespace gensamp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

constexpr int kLagrangePoints = 10;
constexpr std::size_t kMaxLatticeSize = std::size_t{1} << 15;
// Upper limit on table points times frequency nodes for the Gaussian table.
constexpr double kTableBudget = 1e9;

void throw_inadmissible(const PrefilterSpec& spec, double lambda) {
  std::ostringstream os;
  os.precision(17);
  os << "sampling interval " << lambda << " is not admissible for " << describe(spec);
  throw ResonantInterval(os.str());
}

}  // namespace

InterpolatingKernel InterpolatingKernel::build(const PrefilterSpec& spec, double lambda) {
  validate(spec);
  require(lambda > 0.0, "sampling interval must be positive");
  if (!admissible(spec, lambda)) throw_inadmissible(spec, lambda);

  InterpolatingKernel k;
  k.spec_ = spec;
  k.lambda_ = lambda;

  if (auto* f = std::get_if<Sinc>(&spec)) {
    k.kind_ = Kind::Pieces;
    k.pieces_ = detail::sinc_interp_pieces(f->beta, lambda);
    k.radius_ = std::numeric_limits<double>::infinity();
    return k;
  }

  if (auto* f = std::get_if<Gaussian>(&spec)) {
    k.kind_ = Kind::Table;
    const double b2 = f->beta * f->beta;
    const double big = 2.0 * kPi / lambda;
    const double xi_max = 0.5 * big + 20.0 * b2 / big;
    double reach = 140.0 / (b2 * lambda);
    // cost ~ (reach / table step) * (xi_max / freq step), both proportional to reach * xi_max
    const double cost = 5.0 * reach * xi_max * 2.0 * reach * xi_max / kPi;
    if (cost > kTableBudget) reach *= std::sqrt(kTableBudget / cost);
    k.radius_ = reach;

    const double max_dxi = 2.0 * kPi / (4.0 * reach);
    const auto nodes = static_cast<std::size_t>(std::ceil(xi_max / max_dxi)) + 1;
    const double dxi = xi_max / static_cast<double>(nodes - 1);
    k.freq_nodes_.resize(nodes);
    k.freq_weights_.resize(nodes);
    for (std::size_t t = 0; t < nodes; ++t) {
      const double xi = static_cast<double>(t) * dxi;
      const double w = (t == 0 || t + 1 == nodes) ? 0.5 : 1.0;
      k.freq_nodes_[t] = xi;
      k.freq_weights_[t] = 2.0 * dxi / kSqrt2Pi * w * interp_spectrum(spec, lambda, xi);
    }

    k.table_step_ = 0.2 / xi_max;
    const auto points = static_cast<std::size_t>(std::ceil(reach / k.table_step_)) + kLagrangePoints;
    k.table_.resize(points);
    for (std::size_t i = 0; i < points; ++i) k.table_[i] = k.direct_value(static_cast<double>(i) * k.table_step_);
    return k;
  }

  // B-splines: lattice form with the autocorrelation sampled at lambda.
  k.kind_ = Kind::Lattice;
  k.h_ = lambda;
  k.x_scale_ = 1.0;
  const int m = spline_order(spec);
  k.support_ = m;

  const long taps = static_cast<long>(std::floor(m / lambda));
  std::vector<double> a(static_cast<std::size_t>(taps) + 1);
  for (long j = 0; j <= taps; ++j) a[static_cast<std::size_t>(j)] = autocorr_time(spec, j * lambda);

  // d_q = (1/M) sum_t cos(q theta_t) / A(theta_t), doubling M until the low
  // coefficients stop moving (the DFT aliases d_{q + jM} onto d_q).
  const double big = 2.0 * kPi / lambda;
  double cancel = std::abs(a[0]);
  for (long j = 1; j <= taps; ++j) cancel += 2.0 * std::abs(a[static_cast<std::size_t>(j)]);
  cancel *= std::numeric_limits<double>::epsilon() * static_cast<double>(taps + 1);
  std::vector<double> prev;
  for (std::size_t M = 256;; M *= 2) {
    std::vector<double> cos_table(M);
    for (std::size_t t = 0; t < M; ++t) cos_table[t] = std::cos(2.0 * kPi * static_cast<double>(t) / M);
    std::vector<double> inv(M);
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t t = 0; t < M; ++t) {
      double v = a[0];
      for (long j = 1; j <= taps; ++j) v += 2.0 * a[static_cast<std::size_t>(j)] * cos_table[(j * t) % M];
      // A(theta) = Lambda * sum_n |phi_hat(theta/lambda + n Lambda)|^2; where the
      // cosine sum cancels badly, use the positive direct sum instead.
      if (!(v > 1e10 * cancel)) {
        const double xi = 2.0 * kPi * static_cast<double>(t) / (static_cast<double>(M) * lambda);
        const double tol = std::max(1e-13 * std::abs(v), 1e-300);
        v = big * periodic_energy(spec, lambda, xi, tol).total;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      inv[t] = 1.0 / v;
    }
    if (!(lo > 1e-10 * hi)) {
      std::ostringstream os;
      os.precision(17);
      os << "lattice symbol nearly vanishes (min/max " << lo / hi << ") at lambda=" << lambda;
      throw ResonantInterval(os.str());
    }
    const std::size_t half = M / 2;
    std::vector<double> d(half + 1);
    double peak = 0.0;
    for (std::size_t q = 0; q <= half; ++q) {
      quad::CompensatedSum<double> acc;
      for (std::size_t t = 0; t < M; ++t) acc.add(inv[t] * cos_table[(q * t) % M]);
      d[q] = acc.value() / static_cast<double>(M);
      peak = std::max(peak, std::abs(d[q]));
    }
    bool settled = !prev.empty();
    for (std::size_t q = 0; settled && q <= M / 8; ++q) settled = std::abs(d[q] - prev[q]) <= 1e-12 * peak;
    if (settled) {
      std::size_t last = 0;
      for (std::size_t q = 0; q <= half; ++q)
        if (std::abs(d[q]) > 1e-14 * peak) last = q;
      k.offset_ = static_cast<long>(last);
      k.coeff_.assign(2 * last + 1, 0.0);
      for (std::size_t q = 0; q <= last; ++q) k.coeff_[last + q] = k.coeff_[last - q] = d[q];
      break;
    }
    if (M >= kMaxLatticeSize)
      throw ResonantInterval("interpolator coefficients decay too slowly near a resonant interval");
    prev = std::move(d);
  }
  k.radius_ = (static_cast<double>(k.offset_) * k.h_ + k.support_) / k.x_scale_;
  return k;
}

InterpolatingKernel InterpolatingKernel::limit(const PrefilterSpec& spec, int ell) {
  if (!is_bspline(spec)) throw WrongFamily("resonance limit is defined for B-spline prefilters only");
  require(ell >= 2, "resonance index ell must be >= 2");
  InterpolatingKernel k = build(spec, 1.0);
  k.lambda_ = 1.0 / ell;
  k.x_scale_ = ell;
  k.radius_ = (static_cast<double>(k.offset_) * k.h_ + k.support_) / k.x_scale_;
  return k;
}

double InterpolatingKernel::operator()(double x) const {
  switch (kind_) {
    case Kind::Pieces:
      return detail::sinc_pieces_inverse(pieces_, x);
    case Kind::Lattice:
      return std::abs(x) > radius_ ? 0.0 : lattice_value(x * x_scale_);
    case Kind::Table:
      return std::abs(x) > radius_ ? 0.0 : table_value(std::abs(x));
  }
  return 0.0;
}

std::vector<double> InterpolatingKernel::evaluate(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

double InterpolatingKernel::lattice_value(double y) const {
  const long lo = std::max(-offset_, static_cast<long>(std::ceil((y - support_) / h_)));
  const long hi = std::min(offset_, static_cast<long>(std::floor((y + support_) / h_)));
  double acc = 0.0;
  for (long j = lo; j <= hi; ++j) acc += coeff_[static_cast<std::size_t>(j + offset_)] * autocorr_time(spec_, y - j * h_);
  return acc;
}

double InterpolatingKernel::direct_value(double x) const {
  const std::size_t n = freq_nodes_.size();
  const double dxi = n > 1 ? freq_nodes_[1] : 0.0;
  const std::complex<double> rot = std::polar(1.0, x * dxi);
  std::complex<double> phase;
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t % 256 == 0)
      phase = std::polar(1.0, x * freq_nodes_[t]);
    else
      phase *= rot;
    acc += freq_weights_[t] * phase.real();
  }
  return acc;
}

double InterpolatingKernel::table_value(double x) const {
  // Barycentric Lagrange on kLagrangePoints uniform nodes; the table is even in x.
  const double u = x / table_step_;
  const long first = static_cast<long>(std::floor(u)) - kLagrangePoints / 2 + 1;
  const auto sample = [this](long i) { return table_[static_cast<std::size_t>(std::abs(i))]; };
  double num = 0.0;
  double den = 0.0;
  double binom = 1.0;
  for (int j = 0; j < kLagrangePoints; ++j) {
    const long i = first + j;
    const double diff = u - static_cast<double>(i);
    if (diff == 0.0) return sample(i);
    const double w = ((j % 2 == 0) ? 1.0 : -1.0) * binom / diff;
    num += w * sample(i);
    den += w;
    binom = binom * (kLagrangePoints - 1 - j) / (j + 1);
  }
  return num / den;
}

}  // namespace gensamp
