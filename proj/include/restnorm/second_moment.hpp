#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "restnorm/quadrature.hpp"

namespace restnorm {

// Riemann zeta on the critical line, zeta(1/2 + it), computed with
// Euler-Maclaurin summation. The cutoff grows like 0.6|t| and twelve
// correction terms are kept, which holds the error near machine precision
// for |t| up to well past 1e5. Throws AccuracyGuard beyond 2e5.
std::complex<double> zeta_half(double t);

namespace detail {
// Independent cross-check: the same summation carried out in long double
// with twice the cutoff. Slower; intended for spot verification only.
std::complex<double> zeta_half_reference(double t);
}  // namespace detail

// A symmetric window [t0 - half_length, t0 + half_length] on the line.
struct MomentWindow {
  double t0 = 0.0;
  double half_length = 0.0;

  double lo() const { return t0 - half_length; }
  double hi() const { return t0 + half_length; }
  // Recorded scale of the analytic conductor over the window. Informational.
  double conductor_bound() const;
};

// Validates the parameters: half_length must be positive and the window must
// stay inside |t| <= 1e5 (AccuracyGuard otherwise).
MomentWindow make_window(double t0, double half_length);

// Even bump: 1 on |x| <= 1/2, 0 on |x| >= 1, with an infinitely smooth ramp
// sigma(u) = f(1-u) / (f(u) + f(1-u)), f(u) = exp(-1/u), in between. The ramp
// is tabulated on 4096 intervals and evaluated through a natural cubic
// spline.
class SmoothWeight {
 public:
  SmoothWeight();

  double operator()(double x) const;

  // Integral of the bump over the whole line. Exact: the ramp satisfies
  // sigma(u) + sigma(1 - u) = 1, so each ramp contributes exactly 1/4.
  static constexpr double kIntegral = 1.5;

  static const SmoothWeight& shared();

 private:
  double sigma(double u) const;

  std::vector<double> ys_;  // ramp values at the knots
  std::vector<double> m_;   // spline second derivatives at the knots
};

struct MomentResult {
  double value = 0.0;        // integral of |zeta(1/2+it)|^2 over the window
  double main_term = 0.0;    // smooth classical prediction for the same
  std::int64_t evaluations = 0;
};

// Integrates the squared modulus over the window. For windows whose lower
// edge is at least 20 the result is checked against the half_length floor;
// a dip below it indicates a numerical fault and raises BoundViolation.
MomentResult second_moment(const MomentWindow& window,
                           const QuadratureOptions& opt = {});

// Smooth prediction t*log(t/2pi) + (2*euler_gamma - 1)*t, accumulated across
// the window with the even symmetry of the integrand.
double moment_main_term(const MomentWindow& window);

struct SmoothedBound {
  double value = 0.0;        // |integral of zeta * bump|^2 / integral of bump
  double full_moment = 0.0;  // sharp-window second moment for comparison
};

// Lower bound for the windowed second moment through the smooth bump. The
// value can never exceed full_moment; that inequality is re-checked on every
// call and a violation raises BoundViolation.
SmoothedBound smoothed_lower_bound(const MomentWindow& window,
                                   const QuadratureOptions& opt = {});

}  // namespace restnorm
