#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twf/errors.hpp"
#include "twf/integrator.hpp"
#include "twf/presets.hpp"
#include "twf/singular_ode.hpp"

using namespace twf;

namespace {
Model preset(const std::string& name) { return find_preset(name)->build(); }
}  // namespace

TEST_CASE("integrator: linear decay against the exponential") {
  ScalarField f;
  f.f = [](double, double y) { return -y; };
  f.df_dy = [](double, double) { return -1.0; };
  f.df_dt = [](double, double) { return 0.0; };
  IntegrateOptions opt;
  opt.negative = false;
  const Trajectory tr = integrate(f, 0.0, 1.0, 2.0, {}, opt);
  REQUIRE(tr.reason == StopReason::reached_end);
  CHECK(tr.y.back() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  CHECK(hermite_at(tr.t, tr.y, tr.dy, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-6));
}

TEST_CASE("integrator: stiff decay switches to implicit steps") {
  ScalarField f;
  f.f = [](double t, double y) { return -1e6 * (y - std::cos(t)); };
  f.df_dy = [](double, double) { return -1e6; };
  f.df_dt = [](double t, double) { return -1e6 * std::sin(t); };
  IntegrateOptions opt;
  opt.negative = false;
  const Trajectory tr = integrate(f, 0.0, 1.0, 1.0, {}, opt);
  REQUIRE(tr.reason == StopReason::reached_end);
  CHECK(tr.implicit_steps > 0);
  CHECK(tr.y.back() == doctest::Approx(std::cos(1.0)).epsilon(1e-5));
}

TEST_CASE("config validation") {
  IntegratorConfig cfg;
  cfg.eps0 = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ModelError);
  cfg.eps0 = 1e-6;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ModelError);
}

TEST_CASE("slope at 1 from the endpoint quadratic") {
  // r^2 - (h(1) - c) r + q'(1) = 0, positive root
  CHECK(r_plus(preset("fisher"), 3.0) == doctest::Approx(0.5 * (-3.0 + std::sqrt(13.0))));
  CHECK(r_plus(preset("remark_6_2"), 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)r_plus(preset("oscillatory_7_2"), 0.0), Refusal);
}

TEST_CASE("slope pair at 0") {
  const Model m = preset("fisher");
  const auto [sm, sp] = s_pm(m, 3.0);
  CHECK(sm == doctest::Approx(0.5 * (-3.0 - std::sqrt(5.0))));
  CHECK(sp == doctest::Approx(0.5 * (-3.0 + std::sqrt(5.0))));
  CHECK(s_pm_threshold(m) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)s_pm(m, 1.9), BelowAdmissibleRange);
  const auto [a, b] = s_pm(m, 2.0);
  CHECK(a == doctest::Approx(-1.0));
  CHECK(b == doctest::Approx(-1.0));
  CHECK_THROWS_AS((void)s_pm(preset("oscillatory_8_3"), 0.0), Refusal);
  // q'(0) = 0: s_minus = h(0) - c, s_plus = 0
  const auto [m1, p1] = s_pm(preset("remark_6_2"), 1.0);
  CHECK(m1 == doctest::Approx(-1.0));
  CHECK(p1 == 0.0);
}

TEST_CASE("backward shot reproduces the explicit wavefront") {
  const Model m = preset("remark_6_2");
  const ShootingResult s = integrate_backward_from_one(m, 0.0, 0.0);
  REQUIRE(s.succeeded());
  double worst = 0.0;
  for (double x = 1e-4; x <= 1.0 - 1e-4; x += 1e-3) worst = std::max(worst, std::abs(s.z_at(x) - x * x * (x - 1.0)));
  CHECK(worst < 1e-6);
  REQUIRE(s.slope_at_one_estimate);
  CHECK(*s.slope_at_one_estimate == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("second solution through the origin below the maximal one") {
  const Model m = preset("counterexample_6_2b");
  const ShootingResult s = integrate_backward_from_one(m, 0.0, -1.0);
  REQUIRE(s.succeeded());
  for (double x : {0.01, 0.3, 0.8}) CHECK(s.z_at(x) == doctest::Approx(-x * x).epsilon(1e-8));
}

TEST_CASE("forward start with zero slope is refused") {
  CHECK_THROWS_AS((void)integrate_forward_from_zero(preset("remark_6_2"), 1.0, Branch::s_plus), Refusal);
}

TEST_CASE("forward s_minus run stays negative and reaches 1") {
  const ShootingResult s = integrate_forward_from_zero(preset("fisher"), 3.0, Branch::s_minus);
  REQUIRE(s.succeeded());
  CHECK(s.z.back() < 0.0);
  CHECK(s.phi.back() == doctest::Approx(1.0));
}

TEST_CASE("interpolant stays between samples on the s_plus manifold") {
  // z ~ -phi^3 near 0: the stored derivatives must not throw the Hermite
  // interpolant off between samples
  const ShootingResult s = integrate_backward_from_one(preset("remark_6_2"), 1.0, -0.1);
  REQUIRE(s.succeeded());
  for (double x = 1e-6; x < 1e-5; x *= 1.3) {
    const double z = s.z_at(x);
    CHECK(z < 0.0);
    CHECK(z == doctest::Approx(-x * x * x).epsilon(1e-2));
  }
}

TEST_CASE("slope at 0 continues past eps0 when q'(0) > 0") {
  const ShootingResult s = integrate_backward_from_one(preset("fisher"), 2.0, 0.0);
  REQUIRE(s.slope_at_zero_estimate);
  CHECK(*s.slope_at_zero_estimate == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("exact solution is not a strict upper-solution") {
  std::vector<double> phi, eta;
  for (int i = 1; i < 200; ++i) {
    const double x = i / 200.0;
    phi.push_back(x);
    eta.push_back(x * x * (x - 1.0));
  }
  const ComparisonVerdict v = check_upper_lower(preset("remark_6_2"), 0.0, phi, eta, SolutionKind::upper);
  CHECK_FALSE(v.strict);
}
