#include <cmath>
#include <vector>

#include <doctest.h>

#include "restnorm/errors.hpp"
#include "restnorm/numeric.hpp"
#include "restnorm/params.hpp"

using namespace restnorm;

TEST_CASE("make_alpha sorts, recenters, and records the shift") {
  const AlphaParams a = make_alpha({3.0, -1.0, 7.0});
  REQUIRE(a.values.size() == 3);
  CHECK(a.values[0] == doctest::Approx(4.0));
  CHECK(a.values[1] == doctest::Approx(0.0));
  CHECK(a.values[2] == doctest::Approx(-4.0));
  CHECK(a.shift == doctest::Approx(3.0));
  CHECK(a.rank() == 2);

  double sum = 0.0;
  for (double v : a.values) sum += v;
  CHECK(std::abs(sum) <= 1e-15 * 4.0);
}

TEST_CASE("recentering is exact to one rounding of the largest entry") {
  CounterRng rng(7, 1);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v(5);
    for (auto& x : v) x = rng.uniform(-1e6, 1e6);
    const AlphaParams a = make_alpha(v);
    double sum = 0.0;
    for (double x : a.values) sum += x;
    CHECK(std::abs(sum) <= 1e-9);
    for (size_t j = 0; j + 1 < a.values.size(); ++j) {
      CHECK(a.values[j] >= a.values[j + 1]);
    }
  }
}

TEST_CASE("make_beta mirrors make_alpha") {
  const BetaParams b = make_beta({-2.0, 2.0});
  CHECK(b.values[0] == doctest::Approx(2.0));
  CHECK(b.values[1] == doctest::Approx(-2.0));
  CHECK(b.rank() == 2);
  CHECK(b.shift == doctest::Approx(0.0));
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(make_alpha({}), EmptyInput);
  CHECK_THROWS_AS(make_beta({}), EmptyInput);
  CHECK_THROWS_AS(make_alpha({1.0}), EmptyInput);  // rank zero has no gaps
  CHECK_THROWS_AS(make_alpha({1.0, std::nan("")}), NonFinite);
  CHECK_THROWS_AS(make_beta({std::numeric_limits<double>::infinity()}),
                  NonFinite);
}

TEST_CASE("gap vectors round-trip") {
  const AlphaParams a = make_alpha({2.0, 0.0, -2.0});
  const auto y = gaps_y(a);
  REQUIRE(y.size() == 2);
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(2.0));
  const AlphaParams back = alpha_from_gaps_y(y);
  for (size_t i = 0; i < a.values.size(); ++i) {
    CHECK(back.values[i] == doctest::Approx(a.values[i]).epsilon(1e-12));
  }

  const BetaParams b = make_beta({1.5, -0.5, -1.0});
  const auto x = gaps_x(b);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(0.5));
  const BetaParams bback = beta_from_gaps_x(x);
  for (size_t i = 0; i < b.values.size(); ++i) {
    CHECK(bback.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("gaps are nonnegative after sorting") {
  CounterRng rng(11, 2);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(4);
    for (auto& x : v) x = rng.uniform(-10.0, 10.0);
    for (double g : gaps_y(make_alpha(v))) CHECK(g >= 0.0);
  }
}

TEST_CASE("pair array enumerates every sum once") {
  const AlphaParams a = make_alpha({1.0, 0.0, -1.0});
  const BetaParams b = make_beta({0.5, -0.5});
  const PairArray p = pair_array(a, b);
  CHECK(p.rows == 3);
  CHECK(p.cols == 2);
  CHECK(p.at(0, 0) == doctest::Approx(1.5));
  CHECK(p.at(0, 1) == doctest::Approx(0.5));
  CHECK(p.at(2, 1) == doctest::Approx(-1.5));
  CHECK(p.sums.size() == 6);
}

TEST_CASE("rank compatibility is enforced") {
  const AlphaParams a = make_alpha({1.0, -1.0});
  const BetaParams b2 = make_beta({1.0, -1.0});
  CHECK_THROWS_AS(require_compatible(a, b2), DimensionMismatch);
  const BetaParams b1 = make_beta({0.0});
  CHECK_NOTHROW(require_compatible(a, b1));
}
