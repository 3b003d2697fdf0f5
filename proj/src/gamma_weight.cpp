#include "restnorm/gamma_weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "restnorm/errors.hpp"
#include "restnorm/numeric.hpp"

namespace restnorm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2

// B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..12.  With the
// argument pushed to |z| >= 10 the truncation error is ~1e-21.
constexpr double kStirlingCoeff[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

std::complex<double> stirling_tail(std::complex<double> z) {
  const std::complex<double> z2 = 1.0 / (z * z);
  std::complex<double> term = 1.0 / z;
  std::complex<double> acc = 0.0;
  for (double c : kStirlingCoeff) {
    acc += c * term;
    term *= z2;
  }
  return acc;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NonFinite("log_gamma: non-finite argument");
  }
  if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() == std::floor(z.real())) {
    throw NonFinite("log_gamma: pole at non-positive integer");
  }
  // Mirror arguments left of the imaginary axis via the reflection formula,
  // so the recurrence push below always moves toward larger |z|.
  if (z.real() < 0.0) {
    // log G(z) = log(pi / sin(pi z)) - log G(1 - z)
    const std::complex<double> s = std::sin(kPi * z);
    if (s == std::complex<double>(0.0, 0.0)) {
      throw NonFinite("log_gamma: pole");
    }
    return std::log(kPi) - std::log(s) - log_gamma(1.0 - z);
  }
  std::complex<double> shift = 0.0;
  while (std::abs(z) < 10.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  return shift + (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_tail(z);
}

double log_abs_gamma_lanczos(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NonFinite("log_abs_gamma_lanczos: non-finite argument");
  }
  // Godfrey's g = 7 coefficient set.
  static constexpr double c[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  if (z.real() < 0.5) {
    // |G(z)| = pi / (|sin(pi z)| |G(1-z)|)
    const double x = z.real();
    const double y = z.imag();
    const double s2 = std::sin(kPi * x) * std::sin(kPi * x) +
                      std::sinh(kPi * y) * std::sinh(kPi * y);
    if (s2 == 0.0) throw NonFinite("log_abs_gamma_lanczos: pole");
    return std::log(kPi) - 0.5 * std::log(s2) -
           log_abs_gamma_lanczos(1.0 - z);
  }
  const std::complex<double> zm = z - 1.0;
  std::complex<double> a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (zm + static_cast<double>(i));
  const std::complex<double> t = zm + 7.5;
  const std::complex<double> lg =
      kHalfLog2Pi + (zm + 0.5) * std::log(t) - t + std::log(a);
  return lg.real();
}

LogWeight log_q_exact(double t, const AlphaParams& alpha, const BetaParams& beta) {
  require_compatible(alpha, beta);
  if (!std::isfinite(t)) throw NonFinite("log_q_exact: non-finite t");
  const auto& a = alpha.values;
  const auto& b = beta.values;
  NeumaierSum s;
  for (double bv : b) {
    for (double av : a) {
      const double lg = log_abs_gamma({0.25, 0.5 * (t + av + bv)});
      if (!std::isfinite(lg)) throw NonFinite("log_q_exact: gamma overflow");
      s.add(2.0 * lg);
    }
  }
  for (size_t k = 0; k < a.size(); ++k) {
    for (size_t l = k + 1; l < a.size(); ++l) {
      s.add(-2.0 * log_abs_gamma({0.5, 0.5 * (a[k] - a[l])}));
    }
  }
  for (size_t k = 0; k < b.size(); ++k) {
    for (size_t l = k + 1; l < b.size(); ++l) {
      s.add(-2.0 * log_abs_gamma({0.5, 0.5 * (b[k] - b[l])}));
    }
  }
  const double v = s.value();
  if (!std::isfinite(v)) throw NonFinite("log_q_exact: non-finite result");
  return LogWeight{v, v < kLogUnderflowThreshold};
}

double stirling_rational_part(double t, const AlphaParams& alpha,
                              const BetaParams& beta) {
  require_compatible(alpha, beta);
  const auto& a = alpha.values;
  const auto& b = beta.values;
  NeumaierSum s;
  for (double bv : b) {
    for (double av : a) s.add(std::log1p(std::abs(t + av + bv)));
  }
  return -0.5 * s.value();
}

double log_q_stirling(double t, const AlphaParams& alpha, const BetaParams& beta) {
  return -0.5 * kPi * r_exponent(t, alpha, beta) +
         stirling_rational_part(t, alpha, beta);
}

double log_mu_weight(std::span<const double> lambda) {
  NeumaierSum s;
  for (size_t k = 0; k < lambda.size(); ++k) {
    for (size_t l = k + 1; l < lambda.size(); ++l) {
      s.add(std::log1p(std::abs(lambda[k] - lambda[l])));
    }
  }
  return s.value();
}

double mu_weight(std::span<const double> lambda) {
  double p = 1.0;
  for (size_t k = 0; k < lambda.size(); ++k) {
    for (size_t l = k + 1; l < lambda.size(); ++l) {
      p *= 1.0 + std::abs(lambda[k] - lambda[l]);
    }
  }
  return p;
}

LogWeight spectral_density_exact(const BetaParams& beta) {
  const auto& b = beta.values;
  NeumaierSum s;
  bool wall = false;
  for (size_t k = 0; k < b.size(); ++k) {
    for (size_t l = k + 1; l < b.size(); ++l) {
      const double g = b[k] - b[l];
      if (g == 0.0) {
        wall = true;  // G(0) pole in the denominator: the density vanishes
        continue;
      }
      s.add(2.0 * log_abs_gamma({0.5, 0.5 * g}));
      s.add(-2.0 * log_abs_gamma({0.0, 0.5 * g}));
    }
  }
  if (wall) {
    return LogWeight{-std::numeric_limits<double>::infinity(), true};
  }
  const double v = s.value();
  return LogWeight{v, v < kLogUnderflowThreshold};
}

double q_upper_surrogate(double t, const AlphaParams& alpha,
                         const BetaParams& beta) {
  require_compatible(alpha, beta);
  if (!is_admissible(alpha, beta)) {
    throw NotAdmissible("q_upper_surrogate: parameters not admissible");
  }
  if (!median_interval(alpha, beta).contains(t)) {
    throw NotAdmissible("q_upper_surrogate: t outside the median interval");
  }
  const int n = beta.rank();
  const auto& a = alpha.values;
  const auto& b = beta.values;
  NeumaierSum s;
  // 1-based pairs with k+l = n+1 (k = 1..n) and k+l = n+2 (k = 2..n+1).
  for (int k = 1; k <= n; ++k) {
    s.add(std::log1p(std::abs(t + a[k - 1] + b[n - k])));
  }
  for (int k = 2; k <= n + 1; ++k) {
    s.add(std::log1p(std::abs(t + a[k - 1] + b[n + 1 - k])));
  }
  return -log_mu_weight(b) - 0.5 * s.value();
}

double q_lower_surrogate(const AlphaParams& alpha, const BetaParams& beta) {
  if (!is_admissible(alpha, beta)) {
    throw NotAdmissible("q_lower_surrogate: parameters not admissible");
  }
  const SignSplit split = sign_split(alpha, beta);
  const double top_of_minus = split.s_minus.front();
  const double bottom_of_plus = split.s_plus.back();
  NeumaierSum s;
  for (double sp : split.s_plus) s.add(std::log1p(std::abs(sp - top_of_minus)));
  for (double sm : split.s_minus) s.add(std::log1p(std::abs(sm - bottom_of_plus)));
  return -0.5 * s.value();
}

LogWeight stade_gj_star_log(double s_imag, const AlphaParams& alpha,
                            const BetaParams& beta) {
  require_compatible(alpha, beta);
  if (!std::isfinite(s_imag)) throw NonFinite("stade_gj_star_log: non-finite s");
  const int n = beta.rank();
  NeumaierSum s;
  s.add(-n * std::log(2.0));
  s.add(-0.25 * n * (n + 1) * std::log(kPi));  // |pi^{-n(n+1)s/2}| at Re s = 1/2
  for (double bv : beta.values) {
    for (double av : alpha.values) {
      s.add(log_abs_gamma({0.25, 0.5 * (s_imag - av + bv)}));
    }
  }
  const double v = s.value();
  if (!std::isfinite(v)) throw NonFinite("stade_gj_star_log: non-finite result");
  return LogWeight{v, v < kLogUnderflowThreshold};
}

LogWeight stade_glnn_log(double s_imag, const AlphaParams& alpha,
                         const AlphaParams& alpha2) {
  if (alpha.values.size() != alpha2.values.size()) {
    throw DimensionMismatch("stade_glnn_log: ranks differ");
  }
  if (!std::isfinite(s_imag)) throw NonFinite("stade_glnn_log: non-finite s");
  const int n = alpha.rank();
  const auto& a = alpha.values;
  const auto& a2 = alpha2.values;
  NeumaierSum s;
  // At Re s = 1 the pi^{as} prefactor and the pi^{1/2} factors freed from the
  // two inverted normalizing products cancel; only 2^b survives.
  s.add((n * (n + 1) * (n + 2) / 6.0) * std::log(2.0));
  s.add(-log_abs_gamma({0.5 * (n + 1), 0.5 * (n + 1) * s_imag}));
  for (size_t r = 0; r < a.size(); ++r) {
    for (size_t c = r + 1; c < a.size(); ++c) {
      s.add(-log_abs_gamma({0.5, 0.5 * (a[r] - a[c])}));
      s.add(-log_abs_gamma({0.5, 0.5 * (a2[r] - a2[c])}));
    }
  }
  for (double aj : a) {
    for (double bk : a2) {
      s.add(log_abs_gamma({0.5, 0.5 * (s_imag + aj - bk)}));
    }
  }
  const double v = s.value();
  if (!std::isfinite(v)) throw NonFinite("stade_glnn_log: non-finite result");
  return LogWeight{v, v < kLogUnderflowThreshold};
}

}  // namespace restnorm
