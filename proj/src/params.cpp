#include "restnorm/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "restnorm/errors.hpp"

namespace restnorm {

namespace {

// Sort descending, subtract the extended-precision mean, then cancel the
// leftover rounding residue against the largest-magnitude entry.  Per-entry
// subtraction alone leaves a sum of up to (n+1)/2 ulps, which would miss the
// 1e-12 budget for entries near 1e4.
std::pair<std::vector<double>, double> center_sorted(std::vector<double> v,
                                                     const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NonFinite(std::string(what) + ": non-finite entry");
  }
  std::sort(v.begin(), v.end(), std::greater<double>());

  long double mean = 0.0L;
  for (double x : v) mean += static_cast<long double>(x);
  mean /= static_cast<long double>(v.size());
  for (double& x : v) x = static_cast<double>(static_cast<long double>(x) - mean);

  for (int pass = 0; pass < 3; ++pass) {
    long double resid = 0.0L;
    for (double x : v) resid += static_cast<long double>(x);
    if (std::abs(static_cast<double>(resid)) <= 1e-13) break;
    size_t imax = 0;
    for (size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    }
    v[imax] = static_cast<double>(static_cast<long double>(v[imax]) - resid);
  }
  std::sort(v.begin(), v.end(), std::greater<double>());
  return {std::move(v), static_cast<double>(mean)};
}

}  // namespace

AlphaParams make_alpha(std::vector<double> input) {
  if (input.size() < 2) throw EmptyInput("make_alpha: need at least 2 entries");
  auto [v, shift] = center_sorted(std::move(input), "make_alpha");
  return AlphaParams{std::move(v), shift};
}

BetaParams make_beta(std::vector<double> input) {
  if (input.empty()) throw EmptyInput("make_beta: need at least 1 entry");
  auto [v, shift] = center_sorted(std::move(input), "make_beta");
  return BetaParams{std::move(v), shift};
}

std::vector<double> gaps_y(const AlphaParams& alpha) {
  const int n = alpha.rank();
  std::vector<double> y(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    y[j - 1] = alpha.values[n - j] - alpha.values[n - j + 1];
  }
  return y;
}

std::vector<double> gaps_x(const BetaParams& beta) {
  const int n = beta.rank();
  if (n < 1) throw EmptyInput("gaps_x: empty beta");
  std::vector<double> x(static_cast<size_t>(n - 1));
  for (int j = 0; j + 1 < n; ++j) x[j] = beta.values[j] - beta.values[j + 1];
  return x;
}

AlphaParams alpha_from_gaps_y(std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  if (n < 1) throw EmptyInput("alpha_from_gaps_y: empty gap vector");
  for (double g : y) {
    if (!std::isfinite(g) || g < 0.0) throw NonFinite("alpha_from_gaps_y: bad gap");
  }
  // a[k] - a[k+1] = y[n-1-k] (0-based), anchor at 0 then recenter.
  std::vector<double> v(static_cast<size_t>(n) + 1);
  v[n] = 0.0;
  for (int k = n - 1; k >= 0; --k) v[k] = v[k + 1] + y[n - 1 - k];
  return make_alpha(std::move(v));
}

BetaParams beta_from_gaps_x(std::span<const double> x) {
  const int n = static_cast<int>(x.size()) + 1;
  for (double g : x) {
    if (!std::isfinite(g) || g < 0.0) throw NonFinite("beta_from_gaps_x: bad gap");
  }
  std::vector<double> v(static_cast<size_t>(n));
  v[n - 1] = 0.0;
  for (int j = n - 2; j >= 0; --j) v[j] = v[j + 1] + x[j];
  return make_beta(std::move(v));
}

PairArray pair_array(const AlphaParams& alpha, const BetaParams& beta) {
  require_compatible(alpha, beta);
  PairArray p;
  p.rows = static_cast<int>(alpha.values.size());
  p.cols = static_cast<int>(beta.values.size());
  p.sums.resize(static_cast<size_t>(p.rows) * p.cols);
  for (int k = 0; k < p.rows; ++k) {
    for (int l = 0; l < p.cols; ++l) {
      p.sums[static_cast<size_t>(k) * p.cols + l] = alpha.values[k] + beta.values[l];
    }
  }
  return p;
}

void require_compatible(const AlphaParams& alpha, const BetaParams& beta) {
  if (alpha.values.size() != beta.values.size() + 1) {
    throw DimensionMismatch("alpha must have exactly one more entry than beta");
  }
}

}  // namespace restnorm
