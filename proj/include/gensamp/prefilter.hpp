#pragma once

// Prefilter families (ideal low-pass, Gaussian, centered and non-centered
// B-splines), moment weights, and the moment-derived bandwidth measures.

#include <complex>
#include <string>
#include <variant>

namespace gensamp {

struct Sinc {
  double beta;  ///< two-sided band is [-pi*beta, pi*beta]
};
struct Gaussian {
  double beta;  ///< time-domain standard deviation is 1/beta
};
struct BSplineCentered {
  int order;  ///< number of box factors m >= 2
};
struct BSplineNonCentered {
  int order;
};

using PrefilterSpec =
    std::variant<Sinc, Gaussian, BSplineCentered, BSplineNonCentered>;

/// w(xi) = |xi|^s
struct Monomial {
  double s;
};
/// w(xi) = exp(a xi^2)
struct GaussExp {
  double a;
};
/// w(xi) = s (pi beta)^(1-s) |xi|^(s-1)
struct SincScaled {
  double s;
  double beta;
};

using WeightSpec = std::variant<Monomial, GaussExp, SincScaled>;

inline constexpr double kAdmissibleTol = 1e-9;
inline constexpr double kMomentTol = 1e-10;

// Validating constructors; throw PreconditionError on bad parameters.
PrefilterSpec make_sinc(double beta);
PrefilterSpec make_gaussian(double beta);
PrefilterSpec make_bspline(int order);
PrefilterSpec make_bspline_noncentered(int order);
WeightSpec make_monomial(double s);
WeightSpec make_gaussexp(double a);
WeightSpec make_sincscaled(double s, double beta);

void validate(const PrefilterSpec& spec);
void validate(const WeightSpec& w);

std::string describe(const PrefilterSpec& spec);
std::string describe(const WeightSpec& w);

bool is_bspline(const PrefilterSpec& spec);
/// Number of box factors for spline specs, 0 otherwise.
int spline_order(const PrefilterSpec& spec);
/// True when phi is real and even (everything except non-centered splines).
bool is_centered(const PrefilterSpec& spec);

/// Non-centered cardinal B-spline N_m(x) (support [0, m]) by the
/// Cox-de Boor recurrence.
double cardinal_bspline(int m, double x);

/// sin(u)/u with the removable singularity filled in.
double sinc_unnormalized(double u);

double eval_time(const PrefilterSpec& spec, double x);
std::complex<double> eval_freq(const PrefilterSpec& spec, double xi);
/// |phi_hat(xi)|^2, evaluated without forming the complex value.
double spectral_energy(const PrefilterSpec& spec, double xi);
/// Phi_hat(xi) = sqrt(2 pi) |phi_hat(xi)|^2.
double autocorr_freq(const PrefilterSpec& spec, double xi);
/// Phi(x), the autocorrelation of phi, in closed form.
double autocorr_time(const PrefilterSpec& spec, double x);
/// ||phi||^2 = Phi(0).
double energy(const PrefilterSpec& spec);

bool admissible(const PrefilterSpec& spec, double lambda);

double weight_value(const WeightSpec& w, double xi);

struct MomentEstimate {
  double value;
  double remainder;  ///< bound on the truncated quadrature tail (0 if closed form)
};

/// M_w(phi) = int w(|xi|) |phi_hat(xi)|^2 dxi.  Throws DivergentMoment.
MomentEstimate moment_estimate(const PrefilterSpec& spec, const WeightSpec& w);
double moment(const PrefilterSpec& spec, const WeightSpec& w);

/// mu_s(phi) = (M_{|xi|^s}(phi) / ||phi||^2)^(1/s).
double mu_s(const PrefilterSpec& spec, double s);
/// sigma(phi) = mu_2(phi).
double soft_bandwidth(const PrefilterSpec& spec);

}  // namespace gensamp
