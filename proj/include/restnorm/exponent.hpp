#pragma once

#include <span>
#include <vector>

#include "restnorm/params.hpp"

namespace restnorm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double t, double tol = 0.0) const {
    return t >= lo - tol && t <= hi + tol;
  }
};

// Partition of the n(n+1) pairwise sums into equal halves by value: s_plus
// holds the top half, s_minus the bottom half.  tie_note is set when the
// value at the cut repeats on both sides, i.e. the partition of positions is
// not unique (the derived quantities are unaffected).
struct SignSplit {
  std::vector<double> s_plus;
  std::vector<double> s_minus;
  bool tie_note = false;
};

// Piecewise-linear exponent
//   r(t) = sum_{k,l} |t + alpha_k + beta_l|
//          - sum_{k<l} |alpha_k - alpha_l| - sum_{k<l} |beta_k - beta_l|.
// Nonnegative everywhere; slope jumps by 2 at each t = -(alpha_k + beta_l);
// attains its minimum exactly on median_interval().
double r_exponent(double t, const AlphaParams& alpha, const BetaParams& beta);

SignSplit sign_split(const AlphaParams& alpha, const BetaParams& beta);

// [-min s_plus, -max s_minus]; always nonempty (possibly a point).
Interval median_interval(const AlphaParams& alpha, const BetaParams& beta);

// Sorted breakpoints of r: t = -(alpha_k + beta_l), one per pair.
std::vector<double> breakpoints(const AlphaParams& alpha, const BetaParams& beta);

// Pairing condition equivalent to min r = 0: every "reverse-diagonal" sum
// alpha_{n+1-k} + beta_k dominates every alpha_{n+2-l} + beta_l.
bool is_admissible(const AlphaParams& alpha, const BetaParams& beta);

// Interlacing of lambda between the negated alpha in reverse order:
//   -alpha_{n+1} >= lambda_1 >= -alpha_n >= ... >= lambda_n >= -alpha_1.
// Equivalent to admissibility of (alpha, beta) with lambda = beta + t for
// some t in the median interval.
bool interlace_check(std::span<const double> lambda, const AlphaParams& alpha);

// C-slack relaxation of is_admissible; reduces to it at C = 0.
bool is_relaxed_admissible(const AlphaParams& alpha, const BetaParams& beta,
                           double C);

// [lo - C, hi + C]; throws NegativeC for C < 0.
Interval widened_interval(const Interval& interval, double C);

}  // namespace restnorm
