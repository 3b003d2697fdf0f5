#include <cmath>
#include <vector>
#include <numbers>

#include <doctest.h>

#include "restnorm/errors.hpp"
#include "restnorm/exponent.hpp"
#include "restnorm/gamma_weight.hpp"
#include "restnorm/integrals.hpp"
#include "restnorm/params.hpp"

using namespace restnorm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("kernel integral closed forms") {
  CHECK(kernel_integral(0.0, 0.0, 1.0).value ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
  CHECK(kernel_integral(0.0, 0.0, 3.0).value ==
        doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-10));
  const auto r = kernel_integral(-2.0, 2.0, 4.0);
  CHECK(r.evaluations > 0);
  CHECK(r.abs_error_estimate <= 1e-8 * r.value);
  CHECK_THROWS_AS(kernel_integral(0.0, 0.0, -1.0), NonFinite);
}

TEST_CASE("kernel sum closed form") {
  // sum_{|m| <= 10} 1/(1+|m|) = 2 H_11 - 1.
  CHECK(kernel_sum(0.0, 0.0, 10.0) ==
        doctest::Approx(5.03975468975469).epsilon(1e-14));
  CHECK(kernel_sum(0.0, 0.0, 0.5) == 1.0);
}

TEST_CASE("two-sided window integral") {
  // Closed form 2 asin(d / (1 + d)) with d the half-gap.
  CHECK(hahb_integral(0.0, 8.0).value ==
        doctest::Approx(1.85459043600322446).epsilon(1e-10));
  CHECK(hahb_integral(0.0, 6.0).value ==
        doctest::Approx(2.0 * std::asin(0.75)).epsilon(1e-10));
  CHECK(hahb_integral(-2.0, 5.0).value ==
        doctest::Approx(2.0 * std::asin(3.5 / 4.5)).epsilon(1e-10));
  CHECK(hahb_integral(0.0, 8.0).value <= 4.0);
  CHECK_THROWS_AS(hahb_integral(3.0, 1.0), BadOrder);
}

TEST_CASE("box factors reduce to the kernel integral") {
  const AlphaParams a = make_alpha({1.0, -1.0});
  const auto factors = box_bound_factors(a, 2.0);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0] ==
        doctest::Approx(kernel_integral(-1.0, 1.0, 3.0).value).epsilon(1e-9));
  CHECK(box_bound(a, 2.0) == doctest::Approx(factors[0]).epsilon(1e-14));
  CHECK_THROWS_AS(box_bound(a, -0.5), NegativeC);
  CHECK(box_bound_factors(make_alpha({2.0, 0.0, -2.0}), 2.0).size() == 2);
}

TEST_CASE("weight integral over the flat window") {
  const AlphaParams a = make_alpha({1.0, -1.0});
  const BetaParams b = make_beta({0.0});
  const auto st = q_t_integral(a, b, QWeightMode::stirling, QWindow::im);
  CHECK(st.value == doctest::Approx(kPi / 3.0).epsilon(1e-9));
  // Counting floor: interval length times the lower surrogate weight.
  const double floor_value =
      median_interval(a, b).length() * std::exp(q_lower_surrogate(a, b));
  CHECK(st.value >= floor_value);
  CHECK(!st.truncated_at.has_value());

  const auto ex = q_t_integral(a, b, QWeightMode::exact, QWindow::im);
  CHECK(ex.value > 0.0);
  CHECK_THROWS_AS(
      q_t_integral(a, b, QWeightMode::stirling, QWindow::im_widened, -1.0),
      NegativeC);
}

TEST_CASE("full-line window truncates where the decay takes over") {
  const AlphaParams a = make_alpha({5.0, -5.0});
  const BetaParams b = make_beta({0.0});
  const auto full = q_t_integral(a, b, QWeightMode::stirling, QWindow::full_line);
  REQUIRE(full.truncated_at.has_value());
  CHECK(full.truncated_at->first < -5.0);
  CHECK(full.truncated_at->second > 5.0);
  const auto wide =
      q_t_integral(a, b, QWeightMode::stirling, QWindow::im_widened, 25.0);
  CHECK(std::abs(full.value - wide.value) <= 1e-6 * full.value);
}

TEST_CASE("window kernel sum over the shifted lattice") {
  // Rank one has a single zero-sum vector, so the sum is one plain integral.
  const AlphaParams a = make_alpha({2.0, -2.0});
  const auto ls = local_sum(a, 2.0);
  CHECK(ls.points == 1);
  CHECK(ls.value ==
        doctest::Approx(kernel_integral(-2.0, 2.0, 4.0).value).epsilon(1e-6));

  const AlphaParams a2 = make_alpha({2.0, 0.0, -2.0});
  const auto s2 = local_sum(a2, 2.0);
  CHECK(s2.points > 1);
  CHECK(s2.value > 0.0);
  const auto s3 = local_sum(a2, 3.0);
  CHECK(s3.value >= s2.value);

  CHECK_THROWS_AS(local_sum(a2, -1.0), NegativeC);
  CHECK_THROWS_AS(local_sum(a2, 2.0, 1), BudgetExceeded);
  CHECK_THROWS_AS(local_sum(make_alpha({30000.0, -30000.0}), 2.0),
                  BudgetExceeded);
}

TEST_CASE("counting lower bound") {
  // Rank one: single term of length 2 and weight 1/3.
  const auto r1 = lower_bound_sum(make_alpha({1.0, -1.0}));
  CHECK(r1.points == 1);
  CHECK(r1.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Rank two with gaps (2, 2): exactly one interior lattice gap vector.
  const AlphaParams a = make_alpha({2.0, 0.0, -2.0});
  const auto r2 = lower_bound_sum(a);
  CHECK(r2.points == 1);
  const BetaParams b = beta_from_gaps_x(std::vector<double>{1.0});
  const double expected = median_interval(a, b).length() *
                          std::exp(q_lower_surrogate(a, b)) *
                          mu_weight(b.values);
  CHECK(r2.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r2.value > 0.0);

  CHECK_THROWS_AS(lower_bound_sum(make_alpha({0.5, 0.0, -0.5})),
                  SpacingViolation);
}

TEST_CASE("interlacing-box integral") {
  const AlphaParams a = make_alpha({1.0, -1.0});
  const auto st = c_alpha_integral(a, QWeightMode::stirling);
  CHECK(st.value == doctest::Approx(kPi / 3.0).epsilon(1e-7));
  CHECK(st.value <= 4.0);

  const auto ex = c_alpha_integral(a, QWeightMode::exact);
  CHECK(ex.value > 0.0);

  const AlphaParams a2 = make_alpha({2.0, 0.0, -2.0});
  const auto st2 = c_alpha_integral(a2, QWeightMode::stirling);
  CHECK(st2.value > 0.0);
  CHECK(st2.value <= 16.0 + 1e-6);

  const AlphaParams big =
      make_alpha({3.5, 2.5, 1.5, 0.5, -0.5, -1.5, -2.5, -3.5});
  CHECK_THROWS_AS(c_alpha_integral(big, QWeightMode::stirling),
                  UnsupportedDimension);
}

TEST_CASE("tolerance choices agree") {
  QuadratureOptions loose;
  loose.rel_tol = 1e-6;
  QuadratureOptions tight;
  tight.rel_tol = 1e-12;
  const double a = hahb_integral(0.0, 8.0, loose).value;
  const double b = hahb_integral(0.0, 8.0, tight).value;
  CHECK(std::abs(a - b) <= 1e-5 * std::abs(b));
}
