#pragma once

#include <complex>
#include <span>

#include "restnorm/exponent.hpp"
#include "restnorm/params.hpp"

namespace restnorm {

// Below this log scale a weight is treated as numerically negligible: it
// cannot survive multiplication by any desk-scale factor without vanishing
// into roundoff, so downstream truncations are justified.
inline constexpr double kLogUnderflowThreshold = -250.0;

struct LogWeight {
  double log_value = 0.0;
  bool underflow_flag = false;
};

// Principal-path complex log-gamma: argument pushed up by the recurrence
// until |z| >= 10, then the Stirling asymptotic series.  The real part (the
// log magnitude) is accurate to ~1e-14 relative; the imaginary part may be
// off by multiples of 2*pi and is not used by this library.
std::complex<double> log_gamma(std::complex<double> z);

inline double log_abs_gamma(std::complex<double> z) { return log_gamma(z).real(); }

// Independent rational-approximation route (Lanczos, g = 7) used as a
// cross-check oracle for log_abs_gamma.  Ships in the library so the two
// implementations can be compared in any build.
double log_abs_gamma_lanczos(std::complex<double> z);

// log q(t) where q is the ratio of gamma-factor magnitudes
//   prod_{k,l} |G((1/2 + i(t+alpha_k+beta_l))/2)|^2
//   / [prod_{k<l} |G((1+i(alpha_k-alpha_l))/2)|^2
//      * prod_{k<l} |G((1+i(beta_k-beta_l))/2)|^2].
LogWeight log_q_exact(double t, const AlphaParams& alpha, const BetaParams& beta);

// Stirling-scale surrogate: -(pi/2) r(t) - (1/2) sum_{k,l} log(1+|t+alpha_k+beta_l|).
double log_q_stirling(double t, const AlphaParams& alpha, const BetaParams& beta);

// The algebraic half of the surrogate, exposed separately because the
// sandwich bounds below compare against it pointwise.
double stirling_rational_part(double t, const AlphaParams& alpha,
                              const BetaParams& beta);

// prod_{k<l} (1 + |lambda_k - lambda_l|); equals 1 for a single entry.
double mu_weight(std::span<const double> lambda);
double log_mu_weight(std::span<const double> lambda);

// log of the spectral-measure density prod_{k<l} |G((1+ig)/2)|^2 / |G(ig/2)|^2
// with g = beta_k - beta_l.  A zero gap makes the density vanish; that is
// reported via the underflow flag with log_value = -inf.
LogWeight spectral_density_exact(const BetaParams& beta);

// Upper sandwich for the rational part on the median interval:
//   -log mu(beta) - (1/2) sum_{k+l=n+1 or n+2} log(1+|t+alpha_k+beta_l|)
// (1-based pair indices).  Requires admissibility and t in the median
// interval; throws NotAdmissible otherwise.
double q_upper_surrogate(double t, const AlphaParams& alpha, const BetaParams& beta);

// Lower sandwich, t-independent:
//   -(1/2) [ sum_{s in s_plus} log(1+|s - max s_minus|)
//          + sum_{s in s_minus} log(1+|s - min s_plus|) ].
// Requires admissibility.
double q_lower_surrogate(const AlphaParams& alpha, const BetaParams& beta);

// log |2^-n pi^{-n(n+1)s/2} prod_{l,k} G((s - i alpha_k + i beta_l)/2)|
// on the critical line s = 1/2 + i s_imag.
LogWeight stade_gj_star_log(double s_imag, const AlphaParams& alpha,
                            const BetaParams& beta);

// log magnitude of the rank-(n+1) x rank-(n+1) product formula at
// s = 1 + i s_imag, normalizing gamma factors included.
LogWeight stade_glnn_log(double s_imag, const AlphaParams& alpha,
                         const AlphaParams& alpha2);

}  // namespace restnorm
