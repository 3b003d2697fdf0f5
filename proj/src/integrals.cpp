#include "restnorm/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "restnorm/errors.hpp"
#include "restnorm/gamma_weight.hpp"
#include "restnorm/numeric.hpp"
#include "restnorm/polytope.hpp"

namespace restnorm {

namespace {

constexpr double kPi = std::numbers::pi;

double kernel(double t, double a, double b) {
  return 1.0 / std::sqrt((1.0 + std::abs(t + a)) * (1.0 + std::abs(t + b)));
}

[[noreturn]] void bound_failure(const char* what, double value, double bound) {
  std::ostringstream os;
  os << what << ": value " << value << " exceeds bound " << bound;
  throw BoundViolation(os.str());
}

}  // namespace

QuadratureResult kernel_integral(double a, double b, double X,
                                 const QuadratureOptions& opt) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(X) || X < 0.0) {
    throw NonFinite("kernel_integral: bad input");
  }
  const double kinks[] = {-a, -b};
  auto res = adaptive_integrate([=](double t) { return kernel(t, a, b); }, -X, X,
                                opt, kinks);
  if (res.abs_error_estimate > 1e-8 * std::abs(res.value) && res.value != 0.0) {
    throw QuadratureFailure("kernel_integral: error estimate above 1e-8 of value");
  }
  const double bound = std::log(1.0 + std::abs(a) + X) + std::log(1.0 + std::abs(b) + X);
  if (res.value > bound + 1e-9 * std::max(1.0, std::abs(bound))) {
    bound_failure("kernel_integral", res.value, bound);
  }
  return res;
}

double kernel_sum(double a, double b, double X) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(X) || X < 0.0) {
    throw NonFinite("kernel_sum: bad input");
  }
  const long long M = static_cast<long long>(std::floor(X));
  NeumaierSum s;
  for (long long m = -M; m <= M; ++m) {
    s.add(kernel(static_cast<double>(m), a, b));
  }
  return s.value();
}

QuadratureResult hahb_integral(double a, double b, const QuadratureOptions& opt) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw NonFinite("hahb_integral: bad input");
  if (!(a < b)) throw BadOrder("hahb_integral: need a < b");
  auto res = adaptive_integrate([=](double t) { return kernel(t, a, b); }, -b, -a, opt);
  if (res.value > 4.0 + 1e-9) bound_failure("hahb_integral", res.value, 4.0);
  return res;
}

std::vector<double> box_bound_factors(const AlphaParams& alpha, double K,
                                      const QuadratureOptions& opt) {
  if (!(K >= 0.0)) throw NegativeC("box_bound_factors: K must be >= 0");
  const int n = alpha.rank();
  const auto& a = alpha.values;
  std::vector<double> factors(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double hi_alpha = a[n - k];      // alpha_{n+1-k}
    const double lo_alpha = a[n + 1 - k];  // alpha_{n+2-k}
    const double lo = -hi_alpha - K;
    const double hi = -lo_alpha + K;
    const double kinks[] = {-hi_alpha, -lo_alpha};
    auto res = adaptive_integrate(
        [=](double u) { return kernel(u, lo_alpha, hi_alpha); }, lo, hi, opt, kinks);
    factors[k - 1] = res.value;
  }
  return factors;
}

double box_bound(const AlphaParams& alpha, double K, const QuadratureOptions& opt) {
  double prod = 1.0;
  for (double f : box_bound_factors(alpha, K, opt)) prod *= f;
  return prod;
}

QuadratureResult q_t_integral(const AlphaParams& alpha, const BetaParams& beta,
                              QWeightMode mode, QWindow window, double C,
                              const QuadratureOptions& opt) {
  require_compatible(alpha, beta);
  const Interval im = median_interval(alpha, beta);
  double lo = im.lo, hi = im.hi;
  std::optional<std::pair<double, double>> trunc;
  if (window == QWindow::im_widened) {
    const Interval w = widened_interval(im, C);
    lo = w.lo;
    hi = w.hi;
  } else if (window == QWindow::full_line) {
    // Cut where the exponent has grown 80 above its minimum: the discarded
    // integrand mass is below exp(-(pi/2)*80) of the peak scale.
    const double r_min = r_exponent(im.midpoint(), alpha, beta);
    const double r_cut = r_min + 160.0 / kPi;
    auto crossing = [&](double inside, double direction) {
      double step = std::max(1.0, 0.01 * (std::abs(inside) + 1.0));
      double far = inside;
      for (int i = 0; i < 200; ++i) {
        far += direction * step;
        if (r_exponent(far, alpha, beta) >= r_cut) break;
        step *= 2.0;
      }
      double near = inside;
      for (int i = 0; i < 100 && std::abs(far - near) > 1e-9; ++i) {
        const double mid = 0.5 * (near + far);
        if (r_exponent(mid, alpha, beta) >= r_cut) {
          far = mid;
        } else {
          near = mid;
        }
      }
      return far;
    };
    lo = crossing(im.lo, -1.0);
    hi = crossing(im.hi, +1.0);
    trunc = std::make_pair(lo, hi);
  }

  std::function<double(double)> f;
  if (mode == QWeightMode::exact) {
    f = [&](double t) { return std::exp(log_q_exact(t, alpha, beta).log_value); };
  } else {
    f = [&](double t) { return std::exp(log_q_stirling(t, alpha, beta)); };
  }
  const std::vector<double> bps = breakpoints(alpha, beta);
  auto res = adaptive_integrate(f, lo, hi, opt, bps);
  res.truncated_at = trunc;

  if (mode == QWeightMode::stirling && is_admissible(alpha, beta)) {
    const double floor_value = im.length() * std::exp(q_lower_surrogate(alpha, beta));
    if (res.value < floor_value * (1.0 - 1e-9) - 1e-12) {
      std::ostringstream os;
      os << "q_t_integral: value " << res.value << " below floor " << floor_value;
      throw BoundViolation(os.str());
    }
  }
  return res;
}

LatticeSumResult local_sum(const AlphaParams& alpha, double K, std::int64_t budget) {
  if (!(K > 0.0)) throw NegativeC("local_sum: K must be > 0");
  const int n = alpha.rank();
  const auto& a = alpha.values;
  if (a.front() - a.back() > 1e4) {
    throw BudgetExceeded("local_sum: alpha spread beyond the 1e4 runtime guard");
  }

  // Per-coordinate windows for g_k + t (1-based k).
  std::vector<double> wlo(static_cast<size_t>(n)), whi(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    wlo[k - 1] = -a[n - k] - K;
    whi[k - 1] = -a[n + 1 - k] + K;
  }

  QuadratureOptions qopt;
  qopt.rel_tol = 1e-8;
  qopt.abs_tol = 1e-14;
  qopt.max_panels = 400;

  LatticeSumResult out;
  NeumaierSum acc;

  auto add_gamma = [&](const std::vector<double>& g) {
    double tlo = -std::numeric_limits<double>::infinity();
    double thi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      tlo = std::max(tlo, wlo[k] - g[k]);
      thi = std::min(thi, whi[k] - g[k]);
    }
    if (!(tlo < thi)) return;
    std::vector<double> kinks;
    kinks.reserve(2 * static_cast<size_t>(n));
    for (int l = 1; l <= n; ++l) {
      kinks.push_back(-a[n - l] - g[l - 1]);
      kinks.push_back(-a[n + 1 - l] - g[l - 1]);
    }
    auto res = adaptive_integrate(
        [&](double t) {
          double p = 1.0;
          for (int l = 1; l <= n; ++l) {
            const double u = g[l - 1] + t;
            p *= kernel(u, a[n - l], a[n + 1 - l]);
          }
          return p;
        },
        tlo, thi, qopt, kinks);
    acc.add(res.value);
    out.points += 1;
    out.evaluations += res.evaluations;
  };

  if (n == 1) {
    add_gamma({0.0});
    out.value = acc.value();
    return out;
  }

  // Enumerate differences d_k = g_k - g_n; the zero-sum member exists iff
  // sum d == 0 mod n, and then g_n = -sum(d)/n.
  std::vector<long long> dlo(static_cast<size_t>(n) - 1), dhi(static_cast<size_t>(n) - 1);
  for (int k = 0; k + 1 < n; ++k) {
    dlo[k] = static_cast<long long>(std::ceil(wlo[k] - whi[n - 1]));
    dhi[k] = static_cast<long long>(std::floor(whi[k] - wlo[n - 1]));
  }

  std::vector<long long> d(static_cast<size_t>(n) - 1);
  std::vector<double> g(static_cast<size_t>(n));
  std::int64_t visited = 0;

  // Odometer over d_1..d_{n-2}; the last difference walks the arithmetic
  // progression matching the zero-sum residue.
  std::function<void(int, long long)> walk = [&](int k, long long partial) {
    if (k + 2 == n || n == 2) {
      const int last = n - 2;
      long long rem = (-(partial)) % n;
      if (rem < 0) rem += n;
      long long start = dlo[last];
      const long long startmod = ((start % n) + n) % n;
      start += (rem - startmod + n) % n;
      for (long long v = start; v <= dhi[last]; v += n) {
        if (++visited > budget) throw BudgetExceeded("local_sum: lattice budget exceeded");
        const long long total = partial + v;
        const long long gn = -total / n;
        d[last] = v;
        g[n - 1] = static_cast<double>(gn);
        for (int i = 0; i + 1 < n; ++i) g[i] = static_cast<double>(d[i] + gn);
        add_gamma(g);
      }
      return;
    }
    for (long long v = dlo[k]; v <= dhi[k]; ++v) {
      if (++visited > budget) throw BudgetExceeded("local_sum: lattice budget exceeded");
      d[k] = v;
      walk(k + 1, partial + v);
    }
  };
  walk(0, 0);

  out.value = acc.value();
  return out;
}

LatticeSumResult lower_bound_sum(const AlphaParams& alpha, std::int64_t budget) {
  const int n = alpha.rank();
  const std::vector<double> y = gaps_y(alpha);
  for (double g : y) {
    if (!(g >= 1.0)) {
      throw SpacingViolation("lower_bound_sum: every alpha gap must be >= 1");
    }
  }

  LatticeSumResult out;
  NeumaierSum acc;

  auto add_term = [&](const BetaParams& beta) {
    if (!is_admissible(alpha, beta)) return;  // boundary rounding guard
    const Interval im = median_interval(alpha, beta);
    const double term = im.length() *
                        std::exp(q_lower_surrogate(alpha, beta)) *
                        mu_weight(beta.values);
    acc.add(term);
    out.points += 1;
    out.evaluations += 1;
  };

  if (n == 1) {
    add_term(make_beta({0.0}));
    out.value = acc.value();
    return out;
  }

  const YVector yv = make_y(y);
  const QStarRegion region = q_star_region(yv);
  const Zonotope z = make_zonotope(yv);
  const int d = yv.dim();

  // Axis bounding box of the shrunken tile via interval arithmetic over the
  // active generator coefficients in [1/4, 3/4].
  std::vector<double> blo(z.offset), bhi(z.offset);
  for (int j = 1; j <= n; ++j) {
    if (j == region.j0) continue;
    for (int c = 0; c < d; ++c) {
      const double gjc = z.generators[j - 1][c];
      blo[c] += std::min(region.t_lo * gjc, region.t_hi * gjc);
      bhi[c] += std::max(region.t_lo * gjc, region.t_hi * gjc);
    }
  }

  std::vector<long long> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
  for (int c = 0; c < d; ++c) {
    lo[c] = static_cast<long long>(std::ceil(blo[c] - 1e-9));
    hi[c] = static_cast<long long>(std::floor(bhi[c] + 1e-9));
  }

  std::vector<double> x(static_cast<size_t>(d));
  std::int64_t visited = 0;
  std::function<void(int)> walk = [&](int c) {
    if (c == d) {
      if (member_q_star(x, yv, region)) add_term(beta_from_gaps_x(x));
      return;
    }
    for (long long v = lo[c]; v <= hi[c]; ++v) {
      if (++visited > budget) {
        throw BudgetExceeded("lower_bound_sum: lattice budget exceeded");
      }
      x[c] = static_cast<double>(v);
      walk(c + 1);
    }
  };
  walk(0);

  out.value = acc.value();
  return out;
}

namespace {

struct CAlphaIntegrand {
  const AlphaParams* alpha;
  QWeightMode mode;
  double log_c = 0.0;  // exact-mode normalizing constant

  double operator()(std::span<const double> beta) const {
    const auto& a = alpha->values;
    NeumaierSum s;
    if (mode == QWeightMode::stirling) {
      for (size_t k = 0; k < beta.size(); ++k) {
        for (size_t l = k + 1; l < beta.size(); ++l) {
          s.add(std::log1p(std::abs(beta[k] - beta[l])));
        }
      }
      for (double bv : beta) {
        for (double av : a) s.add(-0.5 * std::log1p(std::abs(av + bv)));
      }
      return std::exp(s.value());
    }
    s.add(log_c);
    for (double bv : beta) {
      for (double av : a) s.add(2.0 * log_abs_gamma({0.25, 0.5 * (av + bv)}));
    }
    for (size_t k = 0; k < beta.size(); ++k) {
      for (size_t l = k + 1; l < beta.size(); ++l) {
        const double g = beta[k] - beta[l];
        if (g == 0.0) return 0.0;  // the density has a wall on the diagonal
        s.add(-2.0 * log_abs_gamma({0.0, 0.5 * g}));
      }
    }
    return std::exp(s.value());
  }
};

}  // namespace

QuadratureResult c_alpha_integral(const AlphaParams& alpha, QWeightMode mode,
                                  const QuadratureOptions& opt,
                                  std::uint64_t mc_samples, std::uint64_t seed) {
  const int n = alpha.rank();
  if (n > 6) throw UnsupportedDimension("c_alpha_integral: rank above 6");
  const auto& a = alpha.values;

  CAlphaIntegrand f{&alpha, mode, 0.0};
  if (mode == QWeightMode::exact) {
    NeumaierSum c;
    for (size_t k = 0; k < a.size(); ++k) {
      for (size_t l = k + 1; l < a.size(); ++l) {
        c.add(-2.0 * log_abs_gamma({0.5, 0.5 * (a[k] - a[l])}));
      }
    }
    f.log_c = c.value();
  }

  // Box sides for beta_j (1-based): [-alpha_{n+1-j}, -alpha_{n+2-j}].
  std::vector<double> blo(static_cast<size_t>(n)), bhi(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    blo[j - 1] = -a[n - j];
    bhi[j - 1] = -a[n + 1 - j];
  }

  QuadratureResult res;
  if (n <= 4) {
    QuadratureOptions level = opt;
    // The integrand is smooth inside the box, so modest per-level targets
    // already give a tensor product well below the 4^n comparison scale; a
    // tight relative target would multiply across levels.
    level.rel_tol = std::max(level.rel_tol, n >= 3 ? 1e-6 : 1e-8);
    level.abs_tol = std::max(level.abs_tol, 1e-12);
    level.max_panels = std::min(level.max_panels, n >= 3 ? 64 : 400);
    std::vector<double> beta(static_cast<size_t>(n));
    std::int64_t evals = 0;
    double outer_err = 0.0;
    std::function<double(int)> level_integral = [&](int j) -> double {
      auto g = [&](double bj) -> double {
        beta[j] = bj;
        if (j + 1 == n) {
          ++evals;
          return f(beta);
        }
        return level_integral(j + 1);
      };
      auto r = adaptive_integrate(g, blo[j], bhi[j], level);
      if (j == 0) outer_err = r.abs_error_estimate;
      return r.value;
    };
    res.value = (n >= 1) ? level_integral(0) : 0.0;
    res.evaluations = evals;
    // Outer estimate plus the per-level tolerance propagated once per level.
    res.abs_error_estimate =
        outer_err + n * level.rel_tol * std::abs(res.value);
  } else {
    const CounterRng rng(seed);
    double boxvol = 1.0;
    for (int j = 0; j < n; ++j) boxvol *= bhi[j] - blo[j];
    NeumaierSum sum, sumsq;
    std::vector<double> beta(static_cast<size_t>(n));
    for (std::uint64_t sidx = 0; sidx < mc_samples; ++sidx) {
      const std::uint64_t base = sidx * static_cast<std::uint64_t>(n);
      for (int j = 0; j < n; ++j) {
        beta[j] = blo[j] + (bhi[j] - blo[j]) * rng.uniform_at(base + j);
      }
      const double v = f(beta);
      sum.add(v);
      sumsq.add(v * v);
    }
    const double N = static_cast<double>(mc_samples);
    const double mean = sum.value() / N;
    const double var = std::max(0.0, sumsq.value() / N - mean * mean);
    res.value = boxvol * mean;
    res.abs_error_estimate = 1.96 * boxvol * std::sqrt(var / N);
    res.evaluations = static_cast<std::int64_t>(mc_samples);
  }

  if (mode == QWeightMode::stirling) {
    const double ceiling = std::pow(4.0, n);
    const double slack = (n <= 4) ? 1e-9 * ceiling : 3.0 * res.abs_error_estimate;
    if (res.value > ceiling + slack) {
      bound_failure("c_alpha_integral", res.value, ceiling);
    }
  }
  return res;
}

}  // namespace restnorm
