#include "restnorm/second_moment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "restnorm/errors.hpp"

namespace restnorm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606;

// Euler-Maclaurin tail coefficients B_{2k} / (2k)! for k = 1..12.
constexpr long double kEmTail[12] = {
    1.0L / 12,
    -1.0L / 720,
    1.0L / 30240,
    -1.0L / 1209600,
    1.0L / 47900160,
    -691.0L / 1307674368000.0L,
    7.0L / 523069747200.0L,
    -3617.0L / 10670622842880000.0L,
    43867.0L / (798.0L * 6402373705728000.0L),
    -174611.0L / (330.0L * 2432902008176640000.0L),
    854513.0L / (138.0L * 1124000727777607680000.0L),
    -236364091.0L / (2730.0L * 620448401733239439360000.0L),
};

template <typename Real>
std::complex<Real> zeta_em(Real t, Real cutoff_scale) {
  using C = std::complex<Real>;
  const C s(Real(0.5), t);
  const int N =
      static_cast<int>(std::ceil(cutoff_scale * std::abs(static_cast<double>(t)))) + 20;

  // Compensated partial sum of n^{-s} = n^{-1/2} * cis(-t log n).
  Real sr = 0, cr = 0, si = 0, ci = 0;
  auto add = [](Real& sum, Real& comp, Real x) {
    const Real y = x - comp;
    const Real next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  };
  for (int n = 1; n < N; ++n) {
    const Real ln = std::log(Real(n));
    const Real amp = Real(1) / std::sqrt(Real(n));
    add(sr, cr, amp * std::cos(t * ln));
    add(si, ci, -amp * std::sin(t * ln));
  }
  C total(sr, si);

  const Real lnN = std::log(Real(N));
  const C n_minus_s = std::exp(-s * lnN);
  total += n_minus_s * Real(0.5);
  total += n_minus_s * Real(N) / (s - Real(1));  // N^{1-s} / (s-1)

  // Correction terms (B_{2k}/(2k)!) * N^{1-s-2k} * prod_{j=0}^{2k-2} (s+j).
  C npow = n_minus_s / Real(N);
  C poly = s;
  const Real inv_n2 = Real(1) / (Real(N) * Real(N));
  for (int k = 1; k <= 12; ++k) {
    total += Real(kEmTail[k - 1]) * poly * npow;
    poly *= (s + Real(2 * k - 1)) * (s + Real(2 * k));
    npow *= inv_n2;
  }
  return total;
}

}  // namespace

std::complex<double> zeta_half(double t) {
  if (!std::isfinite(t)) throw NonFinite("zeta_half: t must be finite");
  if (std::abs(t) > 2e5) {
    throw AccuracyGuard("zeta_half: |t| beyond the validated range");
  }
  return zeta_em<double>(t, 0.6);
}

namespace detail {
std::complex<double> zeta_half_reference(double t) {
  const std::complex<long double> z = zeta_em<long double>(t, 1.2L);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
}  // namespace detail

double MomentWindow::conductor_bound() const {
  return (1.0 + std::abs(t0) + half_length) / (2.0 * kPi);
}

MomentWindow make_window(double t0, double half_length) {
  if (!std::isfinite(t0) || !std::isfinite(half_length)) {
    throw NonFinite("make_window: parameters must be finite");
  }
  if (!(half_length > 0.0)) {
    throw UsageError("make_window: half_length must be positive");
  }
  if (std::abs(t0) + half_length > 1e5) {
    throw AccuracyGuard("make_window: window reaches beyond |t| = 1e5");
  }
  return {t0, half_length};
}

SmoothWeight::SmoothWeight() {
  constexpr int kIntervals = 4096;
  const int knots = kIntervals + 1;
  ys_.resize(knots);
  auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  for (int i = 0; i < knots; ++i) {
    const double u = static_cast<double>(i) / kIntervals;
    const double fu = f(u);
    const double fv = f(1.0 - u);
    ys_[i] = fv / (fu + fv);
  }

  // Natural cubic spline: solve the tridiagonal system for the second
  // derivatives with the Thomas algorithm. Uniform spacing h = 1/4096.
  const double h = 1.0 / kIntervals;
  m_.assign(knots, 0.0);
  std::vector<double> diag(knots, 0.0), rhs(knots, 0.0);
  for (int i = 1; i + 1 < knots; ++i) {
    diag[i] = 2.0 * h / 3.0;
    rhs[i] = (ys_[i + 1] - 2.0 * ys_[i] + ys_[i - 1]) / h;
  }
  for (int i = 2; i + 1 < knots; ++i) {
    const double w = (h / 6.0) / diag[i - 1];
    diag[i] -= w * (h / 6.0);
    rhs[i] -= w * rhs[i - 1];
  }
  for (int i = knots - 2; i >= 1; --i) {
    const double upper = (i + 2 < knots) ? (h / 6.0) * m_[i + 1] : 0.0;
    m_[i] = (rhs[i] - upper) / diag[i];
  }
}

double SmoothWeight::sigma(double u) const {
  const int intervals = static_cast<int>(ys_.size()) - 1;
  const double h = 1.0 / intervals;
  u = std::clamp(u, 0.0, 1.0);
  int i = std::min(intervals - 1, static_cast<int>(u * intervals));
  const double xl = i * h;
  const double a = (xl + h - u) / h;
  const double b = (u - xl) / h;
  return a * ys_[i] + b * ys_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double SmoothWeight::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax <= 0.5) return 1.0;
  if (ax >= 1.0) return 0.0;
  return sigma(2.0 * ax - 1.0);
}

const SmoothWeight& SmoothWeight::shared() {
  static const SmoothWeight instance;
  return instance;
}

double moment_main_term(const MomentWindow& window) {
  auto antiderivative = [](double t) {
    const double a = std::abs(t);
    if (a == 0.0) return 0.0;
    const double value = a * (std::log(a / (2.0 * kPi)) + 2.0 * kEulerGamma - 1.0);
    return t > 0.0 ? value : -value;
  };
  return antiderivative(window.hi()) - antiderivative(window.lo());
}

MomentResult second_moment(const MomentWindow& window, const QuadratureOptions& opt) {
  auto res = adaptive_integrate(
      [](double t) { return std::norm(zeta_half(t)); }, window.lo(), window.hi(), opt);
  MomentResult out;
  out.value = res.value;
  out.main_term = moment_main_term(window);
  out.evaluations = res.evaluations;
  // Past the lowest zeros the average squared modulus per unit length stays
  // above one half, so a window this far out can never dip below its
  // half_length without a numerical fault.
  if (window.lo() >= 20.0 && out.value < window.half_length) {
    std::ostringstream os;
    os << "second_moment: value " << out.value << " below floor "
       << window.half_length;
    throw BoundViolation(os.str());
  }
  return out;
}

SmoothedBound smoothed_lower_bound(const MomentWindow& window,
                                   const QuadratureOptions& opt) {
  const SmoothWeight& bump = SmoothWeight::shared();
  const double t0 = window.t0;
  const double T = window.half_length;
  auto scaled = [&](double t) { return bump((t - t0) / T); };
  const double cuts[] = {t0 - 0.5 * T, t0 + 0.5 * T};

  // The real and imaginary parts oscillate around zero, so a pure relative
  // target can demand unbounded refinement; floor the absolute tolerance at
  // a level far below the T-scale quantities being compared.
  QuadratureOptions osc = opt;
  osc.abs_tol = std::max(opt.abs_tol, 1e-8 * (1.0 + T));
  auto re = adaptive_integrate(
      [&](double t) { return zeta_half(t).real() * scaled(t); }, window.lo(),
      window.hi(), osc, cuts);
  auto im = adaptive_integrate(
      [&](double t) { return zeta_half(t).imag() * scaled(t); }, window.lo(),
      window.hi(), osc, cuts);
  auto mass = adaptive_integrate(scaled, window.lo(), window.hi(), opt, cuts);

  SmoothedBound out;
  out.value = (re.value * re.value + im.value * im.value) / mass.value;
  out.full_moment = second_moment(window, opt).value;
  if (out.value > out.full_moment * (1.0 + 1e-9) + 1e-12) {
    std::ostringstream os;
    os << "smoothed_lower_bound: bound " << out.value
       << " exceeds the sharp-window moment " << out.full_moment;
    throw BoundViolation(os.str());
  }
  return out;
}

}  // namespace restnorm
