#include "restnorm/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "restnorm/errors.hpp"
#include "restnorm/numeric.hpp"

namespace restnorm {

double r_exponent(double t, const AlphaParams& alpha, const BetaParams& beta) {
  require_compatible(alpha, beta);
  if (!std::isfinite(t)) throw NonFinite("r_exponent: non-finite t");
  const auto& a = alpha.values;
  const auto& b = beta.values;
  NeumaierSum s;
  for (double bv : b) {
    for (double av : a) s.add(std::abs(t + av + bv));
  }
  for (size_t k = 0; k < a.size(); ++k) {
    for (size_t l = k + 1; l < a.size(); ++l) s.add(-std::abs(a[k] - a[l]));
  }
  for (size_t k = 0; k < b.size(); ++k) {
    for (size_t l = k + 1; l < b.size(); ++l) s.add(-std::abs(b[k] - b[l]));
  }
  return s.value();
}

SignSplit sign_split(const AlphaParams& alpha, const BetaParams& beta) {
  const PairArray p = pair_array(alpha, beta);
  std::vector<double> sorted = p.sums;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const size_t half = sorted.size() / 2;
  SignSplit out;
  out.s_plus.assign(sorted.begin(), sorted.begin() + half);
  out.s_minus.assign(sorted.begin() + half, sorted.end());
  out.tie_note = sorted[half - 1] == sorted[half];
  return out;
}

Interval median_interval(const AlphaParams& alpha, const BetaParams& beta) {
  const SignSplit split = sign_split(alpha, beta);
  return Interval{-split.s_plus.back(), -split.s_minus.front()};
}

std::vector<double> breakpoints(const AlphaParams& alpha, const BetaParams& beta) {
  const PairArray p = pair_array(alpha, beta);
  std::vector<double> bps(p.sums.size());
  for (size_t i = 0; i < p.sums.size(); ++i) bps[i] = -p.sums[i];
  std::sort(bps.begin(), bps.end());
  return bps;
}

bool is_admissible(const AlphaParams& alpha, const BetaParams& beta) {
  require_compatible(alpha, beta);
  const int n = beta.rank();
  const auto& a = alpha.values;
  const auto& b = beta.values;
  // All pairs (k, l) satisfy a[n-k] + b[k-1] >= a[n+1-l] + b[l-1]
  // iff the min of the left family dominates the max of the right one.
  double lhs_min = std::numeric_limits<double>::infinity();
  double rhs_max = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) {
    lhs_min = std::min(lhs_min, a[n - k] + b[k - 1]);
    rhs_max = std::max(rhs_max, a[n + 1 - k] + b[k - 1]);
  }
  return lhs_min >= rhs_max;
}

bool interlace_check(std::span<const double> lambda, const AlphaParams& alpha) {
  const int n = alpha.rank();
  if (static_cast<int>(lambda.size()) != n) {
    throw DimensionMismatch("interlace_check: lambda must have n entries");
  }
  for (int j = 1; j < n; ++j) {
    if (lambda[j - 1] < lambda[j]) throw BadOrder("interlace_check: lambda not sorted");
  }
  const auto& a = alpha.values;
  for (int j = 1; j <= n; ++j) {
    if (!(lambda[j - 1] + a[n - j] >= 0.0)) return false;
    if (!(lambda[j - 1] + a[n + 1 - j] <= 0.0)) return false;
  }
  return true;
}

bool is_relaxed_admissible(const AlphaParams& alpha, const BetaParams& beta,
                           double C) {
  require_compatible(alpha, beta);
  if (!(C >= 0.0)) throw NegativeC("is_relaxed_admissible: C must be >= 0");
  const int n = beta.rank();
  const auto& a = alpha.values;
  const auto& b = beta.values;
  for (int j = 1; j <= n; ++j) {
    for (int k = j; k <= n; ++k) {
      const double diff = b[j - 1] - b[k - 1];
      if (diff > a[n - k] - a[n + 1 - j] + C) return false;
      if (diff < a[n + 1 - k] - a[n - j] - C) return false;
    }
  }
  return true;
}

Interval widened_interval(const Interval& interval, double C) {
  if (!(C >= 0.0)) throw NegativeC("widened_interval: C must be >= 0");
  return Interval{interval.lo - C, interval.hi + C};
}

}  // namespace restnorm
