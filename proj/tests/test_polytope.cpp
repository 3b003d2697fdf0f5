#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "restnorm/errors.hpp"
#include "restnorm/numeric.hpp"
#include "restnorm/polytope.hpp"

using namespace restnorm;

namespace {

std::vector<double> combine(const Zonotope& z, const std::vector<double>& t) {
  std::vector<double> x = z.offset;
  for (size_t j = 0; j < z.generators.size(); ++j) {
    for (size_t c = 0; c < x.size(); ++c) x[c] += t[j] * z.generators[j][c];
  }
  return x;
}

}  // namespace

TEST_CASE("input validation") {
  CHECK_THROWS_AS(make_y({1.0}), EmptyInput);
  CHECK_THROWS_AS(make_y({1.0, -2.0}), NonFinite);
  CHECK_THROWS_AS(make_y({1.0, 0.0}), NonFinite);
  CHECK_THROWS_AS(make_y({1.0, std::nan("")}), NonFinite);
  const YVector yv = make_y({1.0, 1.0, 1.0});
  const std::vector<double> short_x{0.5};
  CHECK_THROWS_AS(member_system(short_x, yv), DimensionMismatch);
}

TEST_CASE("segment case") {
  const YVector yv = make_y({1.0, 2.0});
  CHECK(volume_formula(yv) == 3.0);
  const auto verts = polytope_vertices(yv);
  REQUIRE(verts.size() == 2);
  CHECK(verts[0][0] == 0.0);
  CHECK(verts[1][0] == 3.0);
  const std::vector<double> mid{1.7};
  CHECK(member_system(mid, yv));
  CHECK(member_zonotope(mid, yv));
  const std::vector<double> outside{3.2};
  CHECK(!member_system(outside, yv));
  CHECK(!member_zonotope(outside, yv));
}

TEST_CASE("hexagon vertices and margins") {
  const YVector yv = make_y({1.0, 1.0, 1.0});
  const Zonotope z = make_zonotope(yv);
  CHECK(z.offset == std::vector<double>{1.0, 1.0});
  REQUIRE(z.generators.size() == 3);
  CHECK(z.generators[0] == std::vector<double>{1.0, 0.0});
  CHECK(z.generators[1] == std::vector<double>{-1.0, 1.0});
  CHECK(z.generators[2] == std::vector<double>{0.0, -1.0});

  auto verts = polytope_vertices(yv);
  REQUIRE(verts.size() == 6);
  std::vector<std::vector<double>> expected{{0.0, 1.0}, {0.0, 2.0}, {1.0, 0.0},
                                            {1.0, 2.0}, {2.0, 0.0}, {2.0, 1.0}};
  std::sort(verts.begin(), verts.end());
  for (size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(verts[i][0] - expected[i][0]) < 1e-9);
    CHECK(std::abs(verts[i][1] - expected[i][1]) < 1e-9);
  }
  for (const auto& v : verts) {
    CHECK(std::abs(system_margin(v, yv)) < 1e-9);
  }
  const std::vector<double> centroid{1.0, 1.0};
  CHECK(system_margin(centroid, yv) == 1.0);
  CHECK(zonotope_margin(centroid, yv) > 0.0);
  CHECK(volume_formula(yv) == 3.0);
}

TEST_CASE("facet list") {
  const YVector yv = make_y({1.0, 1.0, 1.0});
  const auto fs = facets(yv);
  REQUIRE(fs.size() == 6);  // n(n-1)
  int lower = 0, upper = 0;
  for (const auto& f : fs) {
    (f.side == FacetSide::lower ? lower : upper) += 1;
    double ones = 0.0;
    for (double c : f.normal) ones += c;
    CHECK(ones == static_cast<double>(f.k0 - f.j0));
  }
  CHECK(lower == 3);
  CHECK(upper == 3);
  // The (1,3) pair spans both coordinates: bounds 1 and 3.
  bool saw_lower = false, saw_upper = false;
  for (const auto& f : fs) {
    if (f.j0 == 1 && f.k0 == 3) {
      if (f.side == FacetSide::lower) {
        CHECK(f.offset_value == 1.0);
        saw_lower = true;
      } else {
        CHECK(f.offset_value == 3.0);
        saw_upper = true;
      }
    }
  }
  CHECK(saw_lower);
  CHECK(saw_upper);
}

TEST_CASE("involution maps the polytope onto itself") {
  const YVector yv = make_y({0.5, 4.0, 0.25, 2.0});
  CounterRng rng(77, 1);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_point(yv, SampleMode::bounding_box, rng);
    const auto ix = involution(x, yv);
    CHECK(std::abs(system_margin(x, yv) - system_margin(ix, yv)) < 1e-12);
    const auto back = involution(ix, yv);
    for (size_t c = 0; c < x.size(); ++c) {
      CHECK(std::abs(back[c] - x[c]) < 1e-12);
    }
  }
}

TEST_CASE("decomposition reconstructs sampled members") {
  CounterRng rng(12, 2);
  const std::vector<double> cases[] = {{1.0, 2.0},
                                       {2.0, 3.0, 5.0},
                                       {0.5, 4.0, 0.25, 2.0},
                                       {3.0, 1.0, 4.0, 1.0, 5.0}};
  for (const auto& ys : cases) {
    const YVector yv = make_y(ys);
    const Zonotope z = make_zonotope(yv);
    const double scale = *std::max_element(ys.begin(), ys.end());
    for (int i = 0; i < 100; ++i) {
      const auto x = sample_point(yv, SampleMode::zonotope_t, rng);
      CHECK(member_zonotope(x, yv));
      CHECK(member_system(x, yv));
      const Decomposition d = decompose(x, yv);
      CHECK(d.inside());
      CHECK(d.t[static_cast<size_t>(d.j0 - 1)] == 0.0);
      const auto back = combine(z, d.t);
      for (size_t c = 0; c < x.size(); ++c) {
        CHECK(std::abs(back[c] - x[c]) <= 1e-9 * (1.0 + scale));
      }
      const auto cells = cell_membership(x, yv);
      CHECK(std::count(cells.begin(), cells.end(), true) >= 1);
    }
  }
}

TEST_CASE("membership predicates agree off the boundary") {
  CounterRng rng(99, 3);
  const YVector yv = make_y({2.0, 3.0, 5.0});
  int disagreements = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto x = sample_point(yv, SampleMode::bounding_box, rng);
    const double sm = system_margin(x, yv);
    const double zm = zonotope_margin(x, yv);
    if (std::min(std::abs(sm), std::abs(zm)) > 1e-9 && (sm > 0.0) != (zm > 0.0)) {
      ++disagreements;
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("volume computed three ways") {
  const YVector yv = make_y({2.0, 3.0, 5.0});
  CHECK(volume_formula(yv) == 31.0);
  CHECK(volume_parallelohedron(yv, 1) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(volume_parallelohedron(yv, 2) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(volume_parallelohedron(yv, 3) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(schur_volume(yv) == doctest::Approx(31.0).epsilon(1e-12));
  CHECK_THROWS_AS(volume_parallelohedron(yv, 0), IndexOutOfRange);
  CHECK_THROWS_AS(volume_parallelohedron(yv, 4), IndexOutOfRange);

  // Repeated side lengths take the elementary-polynomial fallback.
  const YVector tied = make_y({2.0, 2.0, 2.0});
  CHECK(schur_volume(tied) == doctest::Approx(12.0).epsilon(1e-12));

  const McVolume mc = monte_carlo_volume(yv, 200000, 5);
  CHECK(mc.samples == 200000);
  CHECK(std::abs(mc.estimate - 31.0) <= 5.0 * mc.ci95 + 1e-9);
}

TEST_CASE("monte carlo is bit-stable across thread counts") {
  const YVector yv = make_y({1.0, 2.0, 1.5, 0.75});
  const McVolume a = monte_carlo_volume(yv, 100000, 11, 1);
  const McVolume b = monte_carlo_volume(yv, 100000, 11, 4);
  CHECK(a.hits == b.hits);
  CHECK(a.estimate == b.estimate);
  CHECK(a.ci95 == b.ci95);
}

TEST_CASE("difference-matrix route matches the direct generators") {
  const std::vector<double> cases[] = {{1.0, 2.0},
                                       {2.0, 3.0, 5.0},
                                       {0.5, 4.0, 0.25, 2.0},
                                       {3.0, 1.0, 4.0, 1.0, 5.0}};
  for (const auto& ys : cases) {
    const YVector yv = make_y(ys);
    const Zonotope a = make_zonotope(yv);
    const Zonotope b = an_projection(yv);
    CHECK(a.generators == b.generators);
    for (double c : b.offset) CHECK(c == 0.0);
  }
}

TEST_CASE("shrunken reference tile") {
  const YVector yv = make_y({2.0, 1.0, 3.0});
  const QStarRegion region = q_star_region(yv);
  CHECK(region.j0 == 2);
  CHECK(region.k0 == 1);
  CHECK(region.t_lo == 0.25);
  CHECK(region.t_hi == 0.75);

  const Zonotope z = make_zonotope(yv);
  CHECK(member_q_star(combine(z, {0.5, 0.0, 0.5}), yv, region));
  CHECK(!member_q_star(combine(z, {0.9, 0.0, 0.5}), yv, region));
  // Minimal coefficient lands on index 1, not the region's pinned index.
  CHECK(!member_q_star(combine(z, {0.1, 0.5, 0.5}), yv, region));
}

TEST_CASE("geometry report") {
  const YVector yv = make_y({1.0, 1.0, 1.0});
  const auto j = emit_geometry(yv);
  CHECK(j.at("schema") == "restnorm/v1");
  CHECK(j.at("n") == 3);
  CHECK(j.at("volume") == 3.0);
  CHECK(j.at("facets").size() == 6);
  CHECK(j.at("facets")[0].contains("offsetValue"));
  CHECK(j.at("vertices").size() == 6);
  CHECK(j.at("tiles").size() == 3);
}
