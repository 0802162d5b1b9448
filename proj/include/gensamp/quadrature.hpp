#pragma once

#include <complex>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

namespace gensamp::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] split into `panels` equal pieces.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order = 20);

/// Neumaier-compensated running sum; order-fixed, so results are
/// reproducible regardless of how callers schedule work.
template <class T>
class CompensatedSum {
public:
  void add(T v) {
    if constexpr (std::is_same_v<T, double>) {
      add_real(sum_, comp_, v);
    } else {
      double re = sum_.real(), cr = comp_.real();
      double im = sum_.imag(), ci = comp_.imag();
      add_real(re, cr, v.real());
      add_real(im, ci, v.imag());
      sum_ = T(re, im);
      comp_ = T(cr, ci);
    }
  }
  T value() const { return sum_ + comp_; }

private:
  static void add_real(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  T sum_{};
  T comp_{};
};

}  // namespace gensamp::quad
