#pragma once

#include <cstdint>
#include <vector>

#include "restnorm/exponent.hpp"
#include "restnorm/params.hpp"
#include "restnorm/quadrature.hpp"

namespace restnorm {

// int_{-X}^{X} (1+|t+a|)^{-1/2} (1+|t+b|)^{-1/2} dt.  Checks the closed
// logarithmic bound log(1+|a|+X) + log(1+|b|+X) and throws BoundViolation on
// failure; throws QuadratureFailure when the error estimate is worse than
// 1e-8 of the value.
QuadratureResult kernel_integral(double a, double b, double X,
                                 const QuadratureOptions& opt = {});

// Discrete analogue: sum over integers |m| <= X of the same kernel.  The
// comparison against the recorded constant lives in the verify layer.
double kernel_sum(double a, double b, double X);

// int_{-b}^{-a} of the kernel for a < b; always <= 4 (checked, throws
// BoundViolation if the computed value exceeds it).
QuadratureResult hahb_integral(double a, double b,
                               const QuadratureOptions& opt = {});

// Per-coordinate box factors
//   int_{-a_{n+1-k}-K}^{-a_{n+2-k}+K} (1+|a_{n+2-k}+u|)^{-1/2}
//                                     (1+|a_{n+1-k}+u|)^{-1/2} du
// (1-based alpha indices), and their product.
std::vector<double> box_bound_factors(const AlphaParams& alpha, double K,
                                      const QuadratureOptions& opt = {});
double box_bound(const AlphaParams& alpha, double K,
                 const QuadratureOptions& opt = {});

enum class QWeightMode { exact, stirling };
enum class QWindow { im, im_widened, full_line };

// Integral of the gamma weight exp(log q) over the chosen t-window.  The
// full-line window is truncated where the exponent has decayed by 80 below
// its minimum (truncation points reported in the result).  In stirling mode
// on an admissible pair with a window containing the median interval, the
// floor |I_M| exp(q_lower_surrogate) is checked (BoundViolation on failure).
QuadratureResult q_t_integral(const AlphaParams& alpha, const BetaParams& beta,
                              QWeightMode mode, QWindow window, double C = 0.0,
                              const QuadratureOptions& opt = {});

struct LatticeSumResult {
  double value = 0.0;
  std::int64_t points = 0;       // lattice vectors contributing
  std::int64_t evaluations = 0;  // integrand evaluations
};

// Zero-sum integer vectors g whose shifted window (1-based k)
//   -alpha_{n+1-k} - K <= g_k + t <= -alpha_{n+2-k} + K
// is nonempty, each contributing the t-integral of
//   prod_k (1+|alpha_{n+2-k}+g_k+t|)^{-1/2} (1+|alpha_{n+1-k}+g_k+t|)^{-1/2}.
// The constant-weight product mu(g)^{-1} mu(g) from the surrogate spectral
// weighting cancels identically and is not materialized.
LatticeSumResult local_sum(const AlphaParams& alpha, double K,
                           std::int64_t budget = 50'000'000);

// Integer gap vectors x inside the shrunken reference tile, each weighted by
//   |I_M(alpha, beta(x))| * exp(q_lower_surrogate) * mu(beta(x)).
// Requires every alpha gap >= 1; rank 1 degenerates to the single term with
// beta = (0).
LatticeSumResult lower_bound_sum(const AlphaParams& alpha,
                                 std::int64_t budget = 50'000'000);

// Interlacing-box integral over beta_j in [-alpha_{n+1-j}, -alpha_{n+2-j}]
// (1-based).  stirling mode integrates
//   prod_{k<l} (1+|beta_k-beta_l|) * prod_{k,l} (1+|alpha_k+beta_l|)^{-1/2}
// and checks the 4^n ceiling (BoundViolation on failure).  exact mode uses
// the gamma-factor density with its normalizing constant.  Tensor quadrature
// up to rank 4; ranks 5-6 fall back to Monte Carlo with the 95% CI reported
// as the error estimate; above that UnsupportedDimension.
QuadratureResult c_alpha_integral(const AlphaParams& alpha, QWeightMode mode,
                                  const QuadratureOptions& opt = {},
                                  std::uint64_t mc_samples = 2'000'000,
                                  std::uint64_t seed = 1);

}  // namespace restnorm
