#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twf/assumptions.hpp"
#include "twf/errors.hpp"
#include "twf/model.hpp"
#include "twf/presets.hpp"

using namespace twf;

namespace {
Model preset(const std::string& name) { return build_model(ModelSpec{{}, {}, {}, name, name}); }
}  // namespace

TEST_CASE("cubic preset: h(0) = 0 and q'(1) = -1") {
  Model m = preset("remark_6_2");
  CHECK(m.h(0.0) == 0.0);
  CHECK(*m.q_dot_at_one() == doctest::Approx(-1.0));
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(m.h(x) == doctest::Approx(3.0 * x * (x - 1.0)));
    CHECK(m.q(x) == doctest::Approx(x * x * x * (1.0 - x)));
  }
}

TEST_CASE("logistic reaction with unit diffusion") {
  Model m = build_model(ModelSpec{{0.0}, {1.0}, {0.0, 1.0, -1.0}, std::nullopt, "kpp"});
  CHECK(*m.q_dot_at_zero() == doctest::Approx(1.0));
  CHECK(m.q_over_phi(0.0) == doctest::Approx(1.0));
}

TEST_CASE("sharp/classical pair share q") {
  Model m1 = preset("remark_9_3_model1");
  Model m2 = preset("remark_9_3_model2");
  for (double x : {0.05, 0.3, 0.77}) {
    CHECK(m1.q(x) == doctest::Approx(x * x * x * (1.0 - x)));
    CHECK(m2.q(x) == doctest::Approx(m1.q(x)));
  }
}

TEST_CASE("build_model rejects empty specs and unknown presets") {
  CHECK_THROWS_AS((void)build_model(ModelSpec{}), ModelError);
  CHECK_THROWS_AS((void)build_model(ModelSpec{{}, {}, {}, std::string("nope"), "x"}), ModelError);
}

TEST_CASE("closed-form models refuse f and D") {
  Model m = preset("oscillatory_8_3");
  CHECK_FALSE(m.has_flux());
  CHECK_THROWS_AS((void)m.f(0.5), Refusal);
  CHECK_FALSE(m.q_dot_at_zero().has_value());
  CHECK(m.q_dot_at_one().has_value());
  CHECK_FALSE(preset("oscillatory_7_2").q_dot_at_one().has_value());
}

TEST_CASE("oscillatory closed forms solve the reduced equation at c = 0") {
  for (const char* name : {"oscillatory_7_2", "oscillatory_8_3", "remark_6_2", "counterexample_6_2b"}) {
    const Preset* p = find_preset(name);
    REQUIRE(p);
    REQUIRE(p->facts.exact_z);
    Model m = p->build();
    const auto& ez = *p->facts.exact_z;
    double worst = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      const double dx = 1e-6;
      const double zd = (ez.z(x + dx) - ez.z(x - dx)) / (2 * dx);
      const double rhs = m.h(x) - ez.c - m.q(x) / ez.z(x);
      worst = std::max(worst, std::abs(zd - rhs));
    }
    INFO(name);
    CHECK(worst < 1e-6);
    CHECK(ez.z(1.0) == doctest::Approx(ez.b));
  }
}

TEST_CASE("validate: cubic preset") {
  AssumptionReport r = validate_assumptions(preset("remark_6_2"));
  CHECK(r.q_positive == Verdict::holds);
  CHECK(*r.q_dot_zero == 0.0);
  CHECK(r.q_integrable == Verdict::holds);
  CHECK(r.front_scenario());
}

TEST_CASE("validate: oscillation at zero removes q'(0)") {
  AssumptionReport r = validate_assumptions(preset("oscillatory_8_3"));
  CHECK_FALSE(r.q_dot_zero.has_value());
  CHECK(r.q_positive == Verdict::holds);
  CHECK(r.q_integrable == Verdict::fails);
}

TEST_CASE("validate: D = 1 + phi, g = phi is a semi-wavefront pair") {
  Model m = build_model(ModelSpec{{0.0}, {1.0, 1.0}, {0.0, 1.0}, std::nullopt, "x"});
  AssumptionReport r = validate_assumptions(m);
  CHECK(r.g_zero == Verdict::holds);
  CHECK(r.g_zero_one == Verdict::fails);
  // D(1) = 2, so neither diffusivity pattern applies and q(1) != 0.
  CHECK(r.D_one == Verdict::fails);
  CHECK(r.q_positive == Verdict::fails);
}

TEST_CASE("validate: wavefront pair and the logistic model") {
  CHECK(validate_assumptions(preset("remark_9_3_model1")).scenario == Scenario::wavefront);
  CHECK(validate_assumptions(preset("remark_6_2")).scenario == Scenario::semi_wavefront);
  CHECK(validate_assumptions(preset("fisher")).scenario == Scenario::q_only);
}

TEST_CASE("h matches a centered difference of f; endpoint q' match one-sided quotients") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (const char* name : {"remark_6_2", "counterexample_6_2b", "remark_9_3_model2"}) {
    Model m = preset(name);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng), dx = 1e-5;
      CHECK(std::abs((m.f(x + dx) - m.f(x - dx)) / (2 * dx) - m.h(x)) < 1e-8);
    }
    const double s = 1e-6;
    CHECK(std::abs((m.q(s) - m.q(0.0)) / s - *m.q_dot_at_zero()) < 1e-4);
    CHECK(std::abs((m.q(1.0) - m.q(1.0 - s)) / s - *m.q_dot_at_one()) < 1e-4);
  }
}

TEST_CASE("sup helpers") {
  // sup of phi^2 - 1.5 phi over (0,1] is its limit 0 at 0+.
  CHECK(sup_on_unit([](double x) { return x * x - 1.5 * x; }, 0.0) == doctest::Approx(0.0));
  CHECK(sup_on_unit([](double x) { return x * (1 - x); }, 0.0) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(min_on_open([](double x) { return (x - 0.3) * (x - 0.3) + 0.1; }) == doctest::Approx(0.1));
}
