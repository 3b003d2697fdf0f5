#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "restnorm/numeric.hpp"

namespace restnorm {

// Absolute slack used by the membership predicates on each half-space
// constraint.
inline constexpr double kMembershipTol = 1e-9;

// Positive side lengths y_1..y_n (n >= 2); the gap polytope lives in R^{n-1}.
struct YVector {
  std::vector<double> y;
  int n() const { return static_cast<int>(y.size()); }
  int dim() const { return n() - 1; }
};

YVector make_y(std::vector<double> values);

// Translated zonotope: offset w = (y_2,...,y_n) plus [0,1]-combinations of
// the generators g_j = y_j v_j, where v_1 = e_1, v_j = e_j - e_{j-1}
// (2 <= j <= n-1), v_n = -e_{n-1}.  The generators sum to zero.
struct Zonotope {
  std::vector<double> offset;
  std::vector<std::vector<double>> generators;
  int dim() const { return static_cast<int>(offset.size()); }
};

Zonotope make_zonotope(const YVector& yv);

// Half-space membership: for all 1 <= j < k <= n,
//   y_{j+1}+...+y_{k-1} <= x_j+...+x_{k-1} <= y_j+...+y_k.
bool member_system(std::span<const double> x, const YVector& yv,
                   double tol = kMembershipTol);

// Signed distance-like margin: smallest slack over all system constraints
// (positive strictly inside, negative outside).
double system_margin(std::span<const double> x, const YVector& yv);

// Result of writing x - w in generator coordinates, shifted so the smallest
// coefficient is zero (the shift direction sum(v_j) = 0 makes this free).
// j0 is the 1-based index with t_{j0} = 0 (smallest index on ties);
// violations lists 1-based coordinates with t outside [0,1] + tol.
struct Decomposition {
  int j0 = 0;
  std::vector<double> t;
  std::vector<int> violations;
  bool inside(double tol = kMembershipTol) const { return violations.empty() || tol < 0; }
};

Decomposition decompose(std::span<const double> x, const YVector& yv,
                        double tol = kMembershipTol);

bool member_zonotope(std::span<const double> x, const YVector& yv,
                     double tol = kMembershipTol);

// Margin in generator units: min_j (y_j - u_j) for the minimal shifted
// coefficients u_j = t_j y_j (nonnegative by construction).
double zonotope_margin(std::span<const double> x, const YVector& yv);

// Which tiles Q_j (t_j = 0 representation) contain x, 1-based flags.
std::vector<bool> cell_membership(std::span<const double> x, const YVector& yv,
                                  double tol = kMembershipTol);

// sum_j prod_{k != j} y_k.
double volume_formula(const YVector& yv);

// |det| of the generators with g_j removed; j is 1-based.
double volume_parallelohedron(const YVector& yv, int j);

// Same value through the bialternant ratio for the partition (1,...,1,0);
// falls back to expanding prod (x + y_i) when entries nearly repeat.
double schur_volume(const YVector& yv);

// Root-lattice style generator build: difference rows stretched by y_j with
// first and last columns removed.  Offset is zero; the generators must equal
// those of make_zonotope exactly.
Zonotope an_projection(const YVector& yv);

enum class FacetSide { lower, upper };

// One of the n(n-1) facets: sum_{i=j0}^{k0-1} x_i equals the inner y-sum
// (lower) or the outer one (upper); normal is the 0/1 indicator vector.
struct Facet {
  int j0 = 0;
  int k0 = 0;
  std::vector<double> normal;
  double offset_value = 0.0;
  FacetSide side = FacetSide::lower;
};

std::vector<Facet> facets(const YVector& yv);

// Coordinate-wise reflection x_j -> y_j + y_{j+1} - x_j; maps the polytope
// onto itself and swaps opposite facets.
std::vector<double> involution(std::span<const double> x, const YVector& yv);

// Shrunken reference tile used by the lower-bound counting argument:
// t_{j0} = 0 (j0 = argmin y, smallest index on ties), every other
// coefficient confined to [1/4, 3/4]; k0 is the second-smallest index.
struct QStarRegion {
  int j0 = 0;
  int k0 = 0;
  double t_lo = 0.25;
  double t_hi = 0.75;
};

QStarRegion q_star_region(const YVector& yv);

// Is x in the q_star region (all implied t_j within [t_lo, t_hi] + tol)?
bool member_q_star(std::span<const double> x, const YVector& yv,
                   const QStarRegion& region, double tol = kMembershipTol);

enum class SampleMode { zonotope_t, bounding_box };

// zonotope_t: w + sum t_j g_j with t uniform in [0,1]^n (always a member).
// bounding_box: uniform in the tight axis box prod [0, y_i + y_{i+1}].
std::vector<double> sample_point(const YVector& yv, SampleMode mode, CounterRng& rng);

struct McVolume {
  double estimate = 0.0;
  double ci95 = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

// Hit-or-miss volume over the axis bounding box.  Chunked over counters with
// a fixed reduction order, so the result is bit-stable for a given
// (seed, samples, chunk) regardless of thread count.
McVolume monte_carlo_volume(const YVector& yv, std::uint64_t samples,
                            std::uint64_t seed, int threads = 0,
                            std::uint64_t chunk = 1 << 16);

// Vertex list for dim <= 2 (n <= 3), computed by intersecting facet
// hyperplanes; throws UnsupportedDimension above that.
std::vector<std::vector<double>> polytope_vertices(const YVector& yv);

// Geometry report: offset, generators, facets, volume; vertices and the
// per-tile corner loops when n <= 3.
nlohmann::json emit_geometry(const YVector& yv);

}  // namespace restnorm
