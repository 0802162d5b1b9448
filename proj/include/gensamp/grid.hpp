#pragma once

#include <cstddef>

namespace gensamp {

/// Uniform frequency grid xi_k = -half_width + k * step, k = 0..count-1.
/// `count` is odd so that xi = 0 is a node.
class FrequencyGrid {
public:
  FrequencyGrid(double half_width, std::size_t count);

  /// Smallest odd-count grid on [-half_width, half_width] with spacing <= max_step.
  static FrequencyGrid with_max_step(double half_width, double max_step);

  double half_width() const { return half_width_; }
  std::size_t count() const { return count_; }
  double step() const { return 2.0 * half_width_ / static_cast<double>(count_ - 1); }
  double at(std::size_t k) const {
    // Mirror-exact: node k and node count-1-k are exact negatives.
    const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(count_ / 2);
    return static_cast<double>(static_cast<std::ptrdiff_t>(k) - c) * step();
  }
  /// Composite trapezoid weight of node k (without the step factor).
  double trapezoid_weight(std::size_t k) const { return (k == 0 || k + 1 == count_) ? 0.5 : 1.0; }

private:
  double half_width_;
  std::size_t count_;
};

}  // namespace gensamp
