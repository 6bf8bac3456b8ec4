#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twf/errors.hpp"
#include "twf/presets.hpp"
#include "twf/thresholds.hpp"

using namespace twf;

namespace {
Model preset(const std::string& name) { return find_preset(name)->build(); }
}  // namespace

TEST_CASE("bounds coincide for logistic reaction with unit diffusion") {
  const SpeedBounds b = analytic_bounds(preset("fisher"));
  CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(b.upper_pointwise);
  CHECK(*b.upper_pointwise == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("bounds for the cubic example") {
  const SpeedBounds b = analytic_bounds(preset("remark_6_2"));
  CHECK(b.lower == doctest::Approx(0.0));
  // 2 sqrt(max phi^2 (1 - phi)) = 2 sqrt(4/27)
  CHECK(*b.upper_pointwise == doctest::Approx(2.0 * std::sqrt(4.0 / 27.0)).epsilon(1e-8));
  REQUIRE(b.upper_integral);
  CHECK(*b.upper_integral < *b.upper_pointwise);
}

TEST_CASE("critical speed") {
  const auto r1 = critical_speed(preset("remark_6_2"));
  CHECK(std::abs(r1.c_star) < 1e-3);
  const auto r2 = critical_speed(preset("fisher"));
  CHECK(r2.c_star == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r2.bracket_lo <= r2.c_star);
  CHECK(r2.witness.succeeded());
  CHECK_THROWS_AS((void)critical_speed(preset("oscillatory_8_3")), Refusal);
}

TEST_CASE("subcritical indicator around the logistic speed") {
  const Model m = preset("fisher");
  CHECK(is_subcritical(m, 1.9, {}));
  CHECK_FALSE(is_subcritical(m, 2.1, {}));
}

TEST_CASE("slope classes of backward runs") {
  const Model m = preset("fisher");
  CHECK(classify_slope(m, 3.0, integrate_backward_from_one(m, 3.0, 0.0)) == SlopeClass::s_plus);
  CHECK(classify_slope(m, 3.0, integrate_backward_from_one(m, 3.0, -1e-3)) == SlopeClass::s_plus);
  CHECK(classify_slope(m, 3.0, integrate_backward_from_one(m, 3.0, -2.9)) == SlopeClass::failed);
}

TEST_CASE("beta thresholds for the cubic example") {
  const Model m = preset("remark_6_2");
  const double cs = critical_speed(m).c_star;
  const BetaResult r1 = beta_thresholds(m, 1.0, cs);
  REQUIRE(r1.beta);
  REQUIRE(r1.beta_hat);
  CHECK(r1.floor == doctest::Approx(-1.5));
  CHECK(*r1.beta >= r1.floor);
  CHECK(*r1.beta <= *r1.beta_hat);
  CHECK(*r1.beta_hat < 0.0);
  CHECK_FALSE(r1.equality_certified);  // c* = h(0)
  for (std::size_t i = 1; i < r1.samples.size(); ++i) CHECK(r1.samples[i - 1].b <= r1.samples[i].b);

  const BetaResult r2 = beta_thresholds(m, 2.0, cs);
  CHECK(*r2.beta < *r1.beta);
  for (double c : {1.0, 2.0}) {
    const double lo = *beta_thresholds(m, c, cs).beta;
    const double hi = *beta_thresholds(m, c + 5.0, cs).beta;
    CHECK(hi < lo - 1.0);
  }
}

TEST_CASE("logistic beta_hat lies below -1e-3") {
  const Model m = preset("fisher");
  const BetaResult r = beta_thresholds(m, 3.0, 2.0);
  REQUIRE(r.beta_hat);
  CHECK(*r.beta_hat < -1e-3);
  CHECK(*r.beta >= r.floor);
}

TEST_CASE("beta refuses speeds below c* and is unknown at c* without the condition") {
  const Model m = preset("remark_6_2");
  CHECK_THROWS_AS((void)beta_thresholds(m, -1.0, 0.0), Refusal);
  const BetaResult at = beta_thresholds(m, 0.0, 0.0);
  CHECK(at.at_critical_speed);
  CHECK_FALSE(at.beta.has_value());
  CHECK_FALSE(at.note.empty());
}
