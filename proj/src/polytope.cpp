#include "restnorm/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "restnorm/errors.hpp"

namespace restnorm {

namespace {

void require_x_dim(std::span<const double> x, const YVector& yv) {
  if (static_cast<int>(x.size()) != yv.dim()) {
    throw DimensionMismatch("x must have n-1 entries");
  }
}

// Shifted coefficients u_j >= 0 of x - w with min u = 0; the generator sum
// being zero makes the constant shift free.  u_n is pinned to 0 before the
// shift, the rest follow by back substitution.
struct MinimalCoeffs {
  std::vector<double> u;
  int j0 = 0;  // 1-based index of the zero coefficient
};

MinimalCoeffs minimal_coeffs(std::span<const double> x, const YVector& yv) {
  const int n = yv.n();
  std::vector<double> u(static_cast<size_t>(n), 0.0);
  double suffix = 0.0;
  for (int j = n - 2; j >= 0; --j) {
    suffix += x[j] - yv.y[j + 1];
    u[j] = suffix;
  }
  int jmin = 0;
  for (int j = 1; j < n; ++j) {
    if (u[j] < u[jmin]) jmin = j;
  }
  const double q = -u[jmin];
  for (int j = 0; j < n; ++j) u[j] += q;
  u[jmin] = 0.0;
  return MinimalCoeffs{std::move(u), jmin + 1};
}

// Double-double value: an unevaluated sum hi + lo with |lo| at most half an
// ulp of hi, giving roughly 32 decimal digits. The bialternant determinants
// shrink like the product of node gaps while their entries stay O(1), so
// plain doubles lose the ratio on crowded nodes.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
  DD() = default;
  DD(double v) : hi(v) {}
  DD(double h, double l) : hi(h), lo(l) {}
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return DD{s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| or a == 0.
DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return DD{s, b - (s - a)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return DD{p, std::fma(a, b, -p)};
}

DD operator-(DD a) { return DD{-a.hi, -a.lo}; }

DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD operator-(DD a, DD b) { return a + (-b); }

DD operator*(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * DD{q1};
  const double q2 = (r.hi + r.lo) / b.hi;
  r = r - b * DD{q2};
  const double q3 = (r.hi + r.lo) / b.hi;
  return quick_two_sum(q1, q2) + DD{q3};
}

DD& operator*=(DD& a, DD b) {
  a = a * b;
  return a;
}

DD& operator-=(DD& a, DD b) {
  a = a - b;
  return a;
}

bool operator>(DD a, DD b) {
  return a.hi > b.hi || (a.hi == b.hi && a.lo > b.lo);
}

DD abs_val(DD a) {
  return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a;
}

double abs_val(double a) { return std::abs(a); }

template <typename T>
T det_gauss_impl(std::vector<std::vector<T>> m) {
  const int d = static_cast<int>(m.size());
  T det = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (abs_val(m[r][c]) > abs_val(m[piv][c])) piv = r;
    }
    if (!(abs_val(m[piv][c]) > T(0.0))) return T(0.0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < d; ++r) {
      const T f = m[r][c] / m[c][c];
      for (int cc = c; cc < d; ++cc) m[r][cc] -= f * m[c][cc];
    }
  }
  return det;
}

double det_gauss(std::vector<std::vector<double>> m) {
  return det_gauss_impl(std::move(m));
}

}  // namespace

YVector make_y(std::vector<double> values) {
  if (values.size() < 2) throw EmptyInput("make_y: need at least 2 entries");
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFinite("make_y: non-finite entry");
    if (!(v > 0.0)) throw NonFinite("make_y: entries must be strictly positive");
  }
  return YVector{std::move(values)};
}

Zonotope make_zonotope(const YVector& yv) {
  const int n = yv.n();
  const int d = yv.dim();
  Zonotope z;
  z.offset.assign(yv.y.begin() + 1, yv.y.end());
  z.generators.assign(static_cast<size_t>(n), std::vector<double>(d, 0.0));
  z.generators[0][0] = yv.y[0];
  for (int j = 2; j <= n - 1; ++j) {
    z.generators[j - 1][j - 1] = yv.y[j - 1];
    z.generators[j - 1][j - 2] = -yv.y[j - 1];
  }
  z.generators[n - 1][d - 1] = -yv.y[n - 1];
  return z;
}

double system_margin(std::span<const double> x, const YVector& yv) {
  require_x_dim(x, yv);
  const int n = yv.n();
  // Prefix sums: X[i] = x_1+...+x_i, Y[i] = y_1+...+y_i (1-based logical).
  std::vector<double> X(static_cast<size_t>(n), 0.0), Y(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n - 1; ++i) X[i] = X[i - 1] + x[i - 1];
  for (int i = 1; i <= n; ++i) Y[i] = Y[i - 1] + yv.y[i - 1];
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 1; j < n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const double xs = X[k - 1] - X[j - 1];
      const double lower = Y[k - 1] - Y[j];      // y_{j+1}+...+y_{k-1}
      const double upper = Y[k] - Y[j - 1];      // y_j+...+y_k
      margin = std::min(margin, xs - lower);
      margin = std::min(margin, upper - xs);
    }
  }
  return margin;
}

bool member_system(std::span<const double> x, const YVector& yv, double tol) {
  return system_margin(x, yv) >= -tol;
}

Decomposition decompose(std::span<const double> x, const YVector& yv, double tol) {
  require_x_dim(x, yv);
  MinimalCoeffs mc = minimal_coeffs(x, yv);
  const int n = yv.n();
  Decomposition d;
  d.j0 = mc.j0;
  d.t.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    d.t[j] = mc.u[j] / yv.y[j];
    if (mc.u[j] > yv.y[j] + tol) d.violations.push_back(j + 1);
  }
  return d;
}

double zonotope_margin(std::span<const double> x, const YVector& yv) {
  MinimalCoeffs mc = minimal_coeffs(x, yv);
  double margin = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < mc.u.size(); ++j) {
    margin = std::min(margin, yv.y[j] - mc.u[j]);
  }
  return margin;
}

bool member_zonotope(std::span<const double> x, const YVector& yv, double tol) {
  return zonotope_margin(x, yv) >= -tol;
}

std::vector<bool> cell_membership(std::span<const double> x, const YVector& yv,
                                  double tol) {
  MinimalCoeffs mc = minimal_coeffs(x, yv);
  const int n = yv.n();
  std::vector<bool> in(static_cast<size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    // Shift the representation so coefficient j is zero, then range-check.
    const double c = -mc.u[j];
    bool ok = true;
    for (int m = 0; m < n && ok; ++m) {
      const double um = mc.u[m] + c;
      ok = um >= -tol && um <= yv.y[m] + tol;
    }
    in[j] = ok;
  }
  return in;
}

double volume_formula(const YVector& yv) {
  const int n = yv.n();
  NeumaierSum s;
  for (int j = 0; j < n; ++j) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k != j) p *= yv.y[k];
    }
    s.add(p);
  }
  return s.value();
}

double volume_parallelohedron(const YVector& yv, int j) {
  const int n = yv.n();
  if (j < 1 || j > n) throw IndexOutOfRange("volume_parallelohedron: j out of range");
  const Zonotope z = make_zonotope(yv);
  std::vector<std::vector<double>> m;
  m.reserve(static_cast<size_t>(n) - 1);
  for (int g = 1; g <= n; ++g) {
    if (g != j) m.push_back(z.generators[g - 1]);
  }
  return std::abs(det_gauss(std::move(m)));
}

double schur_volume(const YVector& yv) {
  const int n = yv.n();

  // Expansion of prod_i (X + y_i), reading off the coefficient of X^1. All
  // terms are positive, so this is accurate to roundoff; it serves as the
  // limit value whenever the determinant ratio below degrades or the
  // bialternant is outright 0/0 on repeated entries.
  const auto expansion = [&yv, n]() {
    std::vector<double> coeff(static_cast<size_t>(n) + 1, 0.0);
    coeff[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int c = i + 1; c >= 1; --c) coeff[c] = coeff[c - 1] + coeff[c] * yv.y[i];
      coeff[0] *= yv.y[i];
    }
    return coeff[1];
  };

  // The denominator determinant has a closed form: the Vandermonde product
  // over pairs, times the sign of the descending exponent order. Each factor
  // is a single subtraction, so this value is good to a few ulps and later
  // exposes exactly how many digits the elimination lost on these nodes.
  DD vprod = ((n * (n - 1) / 2) % 2 != 0) ? -1.0 : 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) vprod *= DD{yv.y[j] - yv.y[i]};
  }
  if (vprod.hi == 0.0) return expansion();

  // Exponents (n, n-1, ..., 2, 0) over Vandermonde exponents (n-1, ..., 0),
  // both eliminations in double-double: the determinant pair shrinks like
  // the product of node gaps while the entries stay O(1), a cancellation
  // plain doubles cannot absorb.
  std::vector<std::vector<DD>> num(static_cast<size_t>(n),
                                   std::vector<DD>(static_cast<size_t>(n)));
  std::vector<std::vector<DD>> den = num;
  for (int i = 0; i < n; ++i) {
    std::vector<DD> pows(static_cast<size_t>(n) + 1, DD{1.0});
    for (int p = 1; p <= n; ++p) pows[p] = pows[p - 1] * DD{yv.y[i]};
    for (int j = 0; j < n; ++j) {
      const int mu = (j < n - 1) ? n - j : 0;
      num[i][j] = pows[mu];
      den[i][j] = pows[n - 1 - j];
    }
  }
  const DD dnum = det_gauss_impl(std::move(num));
  const DD dden = det_gauss_impl(std::move(den));

  // The denominator elimination doubles as a canary for the numerator one:
  // same nodes, same gap suppression. Accept only when it reproduces the
  // closed form almost exactly; the division itself uses the closed form,
  // so the numerator elimination is the sole error source left.
  const DD diff = dden - vprod;
  if (std::abs(diff.hi) > 3e-15 * std::abs(vprod.hi)) return expansion();
  const DD ratio = dnum / vprod;
  return ratio.hi + ratio.lo;
}

Zonotope an_projection(const YVector& yv) {
  const int n = yv.n();
  // Difference matrix rows (-1 at column j, +1 at column j+1) stretched by
  // y_j, then first and last columns dropped.
  std::vector<std::vector<double>> full(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  for (int j = 0; j < n; ++j) {
    full[j][j] = -yv.y[j];
    full[j][j + 1] = yv.y[j];
  }
  Zonotope z;
  z.offset.assign(static_cast<size_t>(yv.dim()), 0.0);
  z.generators.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(yv.dim())));
  for (int j = 0; j < n; ++j) {
    for (int c = 1; c <= n - 1; ++c) z.generators[j][c - 1] = full[j][c];
  }
  return z;
}

std::vector<Facet> facets(const YVector& yv) {
  const int n = yv.n();
  const int d = yv.dim();
  std::vector<double> Y(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) Y[i] = Y[i - 1] + yv.y[i - 1];
  std::vector<Facet> out;
  out.reserve(static_cast<size_t>(n) * (n - 1));
  for (int j0 = 1; j0 < n; ++j0) {
    for (int k0 = j0 + 1; k0 <= n; ++k0) {
      std::vector<double> normal(static_cast<size_t>(d), 0.0);
      for (int i = j0; i <= k0 - 1; ++i) normal[i - 1] = 1.0;
      out.push_back(Facet{j0, k0, normal, Y[k0 - 1] - Y[j0], FacetSide::lower});
      out.push_back(Facet{j0, k0, normal, Y[k0] - Y[j0 - 1], FacetSide::upper});
    }
  }
  return out;
}

std::vector<double> involution(std::span<const double> x, const YVector& yv) {
  require_x_dim(x, yv);
  std::vector<double> out(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    out[j] = yv.y[j] + yv.y[j + 1] - x[j];
  }
  return out;
}

QStarRegion q_star_region(const YVector& yv) {
  const int n = yv.n();
  int j0 = 0;
  for (int j = 1; j < n; ++j) {
    if (yv.y[j] < yv.y[j0]) j0 = j;
  }
  int k0 = (j0 == 0) ? 1 : 0;
  for (int j = 0; j < n; ++j) {
    if (j != j0 && yv.y[j] < yv.y[k0]) k0 = j;
  }
  return QStarRegion{j0 + 1, k0 + 1, 0.25, 0.75};
}

bool member_q_star(std::span<const double> x, const YVector& yv,
                   const QStarRegion& region, double tol) {
  Decomposition d = decompose(x, yv, tol);
  if (d.j0 != region.j0) return false;
  const int n = yv.n();
  for (int j = 1; j <= n; ++j) {
    const double tj = d.t[j - 1];
    const double tol_t = tol / yv.y[j - 1];
    if (j == region.j0) {
      if (tj > tol_t) return false;
    } else if (tj < region.t_lo - tol_t || tj > region.t_hi + tol_t) {
      return false;
    }
  }
  return true;
}

std::vector<double> sample_point(const YVector& yv, SampleMode mode, CounterRng& rng) {
  const int n = yv.n();
  const int d = yv.dim();
  if (mode == SampleMode::bounding_box) {
    std::vector<double> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) x[i] = rng.uniform() * (yv.y[i] + yv.y[i + 1]);
    return x;
  }
  std::vector<double> x(yv.y.begin() + 1, yv.y.end());
  const double t1 = rng.uniform();
  x[0] += t1 * yv.y[0];
  for (int j = 2; j <= n - 1; ++j) {
    const double tj = rng.uniform();
    x[j - 1] += tj * yv.y[j - 1];
    x[j - 2] -= tj * yv.y[j - 1];
  }
  const double tn = rng.uniform();
  x[d - 1] -= tn * yv.y[n - 1];
  return x;
}

McVolume monte_carlo_volume(const YVector& yv, std::uint64_t samples,
                            std::uint64_t seed, int threads, std::uint64_t chunk) {
  const int n = yv.n();
  const int d = yv.dim();
  double boxvol = 1.0;
  std::vector<double> side(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    side[i] = yv.y[i] + yv.y[i + 1];
    boxvol *= side[i];
  }
  std::vector<double> Y(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) Y[i] = Y[i - 1] + yv.y[i - 1];

  const CounterRng rng(seed);
  const std::uint64_t nchunks = (samples + chunk - 1) / chunk;
  std::vector<std::uint64_t> chunk_hits(nchunks, 0);

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = c * chunk;
    const std::uint64_t hi = std::min(samples, lo + chunk);
    std::uint64_t hits = 0;
    std::vector<double> X(static_cast<size_t>(n), 0.0);
    for (std::uint64_t s = lo; s < hi; ++s) {
      const std::uint64_t base = s * static_cast<std::uint64_t>(d);
      for (int i = 0; i < d; ++i) {
        X[i + 1] = X[i] + rng.uniform_at(base + i) * side[i];
      }
      bool in = true;
      for (int j = 1; j < n && in; ++j) {
        for (int k = j + 1; k <= n && in; ++k) {
          const double xs = X[k - 1] - X[j - 1];
          in = xs >= Y[k - 1] - Y[j] && xs <= Y[k] - Y[j - 1];
        }
      }
      hits += in ? 1 : 0;
    }
    chunk_hits[c] = hits;
  };

  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (nchunks < static_cast<std::uint64_t>(nthreads)) {
    nthreads = static_cast<int>(nchunks);
  }
  if (nthreads <= 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int tix = 0; tix < nthreads; ++tix) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c < nchunks; ++c) hits += chunk_hits[c];
  const double p = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
  McVolume mv;
  mv.samples = samples;
  mv.hits = hits;
  mv.estimate = boxvol * p;
  mv.ci95 = samples ? 1.96 * boxvol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))
                    : std::numeric_limits<double>::infinity();
  return mv;
}

std::vector<std::vector<double>> polytope_vertices(const YVector& yv) {
  const int n = yv.n();
  if (n > 3) {
    throw UnsupportedDimension("polytope_vertices: vertex output needs n <= 3");
  }
  if (n == 2) {
    return {{0.0}, {yv.y[0] + yv.y[1]}};
  }
  const auto fs = facets(yv);
  const double scale = *std::max_element(yv.y.begin(), yv.y.end());
  std::vector<std::vector<double>> verts;
  for (size_t i = 0; i < fs.size(); ++i) {
    for (size_t j = i + 1; j < fs.size(); ++j) {
      const auto& a = fs[i];
      const auto& b = fs[j];
      const double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
      if (std::abs(det) < 1e-12) continue;
      const double x0 =
          (a.offset_value * b.normal[1] - b.offset_value * a.normal[1]) / det;
      const double x1 =
          (a.normal[0] * b.offset_value - b.normal[0] * a.offset_value) / det;
      const std::vector<double> cand{x0, x1};
      if (!member_system(cand, yv, 1e-9 * std::max(1.0, scale))) continue;
      bool dup = false;
      for (const auto& v : verts) {
        if (std::abs(v[0] - x0) < 1e-7 * std::max(1.0, scale) &&
            std::abs(v[1] - x1) < 1e-7 * std::max(1.0, scale)) {
          dup = true;
          break;
        }
      }
      if (!dup) verts.push_back(cand);
    }
  }
  // Order counterclockwise around the centroid for a clean polygon loop.
  double cx = 0.0, cy = 0.0;
  for (const auto& v : verts) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(verts.size());
  cy /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const auto& p, const auto& q) {
    return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q[1] - cy, q[0] - cx);
  });
  return verts;
}

nlohmann::json emit_geometry(const YVector& yv) {
  const int n = yv.n();
  const Zonotope z = make_zonotope(yv);
  nlohmann::ordered_json out;
  out["schema"] = "restnorm/v1";
  out["n"] = n;
  out["y"] = yv.y;
  out["offset"] = z.offset;
  out["generators"] = z.generators;
  out["volume"] = volume_formula(yv);
  nlohmann::ordered_json fl = nlohmann::ordered_json::array();
  for (const auto& f : facets(yv)) {
    fl.push_back({{"j0", f.j0},
                  {"k0", f.k0},
                  {"side", f.side == FacetSide::lower ? "lower" : "upper"},
                  {"normal", f.normal},
                  {"offsetValue", f.offset_value}});
  }
  out["facets"] = fl;
  if (n <= 3) {
    out["vertices"] = polytope_vertices(yv);
    nlohmann::ordered_json tiles = nlohmann::ordered_json::array();
    for (int j = 1; j <= n; ++j) {
      // Corner loop of tile j: offset combined with the active generators.
      std::vector<int> active;
      for (int g = 1; g <= n; ++g) {
        if (g != j) active.push_back(g - 1);
      }
      std::vector<std::vector<double>> corners;
      auto corner = [&](bool ua, bool ub) {
        std::vector<double> p = z.offset;
        if (ua) {
          for (int c = 0; c < yv.dim(); ++c) p[c] += z.generators[active[0]][c];
        }
        if (ub && active.size() > 1) {
          for (int c = 0; c < yv.dim(); ++c) p[c] += z.generators[active[1]][c];
        }
        return p;
      };
      if (active.size() == 1) {
        corners = {corner(false, false), corner(true, false)};
      } else {
        corners = {corner(false, false), corner(true, false), corner(true, true),
                   corner(false, true)};
      }
      tiles.push_back({{"j", j}, {"corners", corners}});
    }
    out["tiles"] = tiles;
  }
  return out;
}

}  // namespace restnorm
