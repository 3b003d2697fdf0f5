#pragma once

#include <span>
#include <vector>

namespace restnorm {

// Spectral-parameter vector of length n+1 for the larger group: sorted
// non-increasing, entries summing to zero.  `shift` records the recentering
// applied by make_alpha.
struct AlphaParams {
  std::vector<double> values;
  double shift = 0.0;

  int rank() const { return static_cast<int>(values.size()) - 1; }
};

// Companion vector of length n for the smaller group, same normalization.
struct BetaParams {
  std::vector<double> values;
  double shift = 0.0;

  int rank() const { return static_cast<int>(values.size()); }
};

// Sorts non-increasing and recenters to zero sum.  The mean is taken in
// extended precision and the residual is folded into the largest-magnitude
// entry, so the final sum is zero to ~1 ulp of the largest entry.
AlphaParams make_alpha(std::vector<double> input);
BetaParams make_beta(std::vector<double> input);

// Consecutive alpha gaps read off in reverse order: y_j = a[n-j] - a[n-j+1]
// for j = 1..n (1-based), so y_1 is the gap at the bottom of the vector.
std::vector<double> gaps_y(const AlphaParams& alpha);

// Consecutive beta gaps in natural order: x_j = b[j-1] - b[j], j = 1..n-1.
std::vector<double> gaps_x(const BetaParams& beta);

// Rebuild zero-sum parameter vectors from gap vectors.
AlphaParams alpha_from_gaps_y(std::span<const double> y);
BetaParams beta_from_gaps_x(std::span<const double> x);

// All pairwise sums alpha_k + beta_l, row k in [0, n], column l in [0, n-1].
struct PairArray {
  int rows = 0;
  int cols = 0;
  std::vector<double> sums;

  double at(int k, int l) const { return sums[static_cast<size_t>(k) * cols + l]; }
};

PairArray pair_array(const AlphaParams& alpha, const BetaParams& beta);

// Throws DimensionMismatch unless alpha has exactly one more entry than beta.
void require_compatible(const AlphaParams& alpha, const BetaParams& beta);

}  // namespace restnorm
