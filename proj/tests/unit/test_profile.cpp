#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twf/errors.hpp"
#include "twf/presets.hpp"
#include "twf/profile.hpp"

using namespace twf;

namespace {
Model preset(const std::string& name) { return find_preset(name)->build(); }

FrontProfile wavefront_profile(const std::string& name, double normalization = 0.5) {
  const Model m = preset(name);
  ProfileConfig cfg;
  cfg.normalization = normalization;
  return build_profile(m, integrate_backward_from_one(m, 0.0, 0.0), cfg, ClassificationContext{0.0, std::nullopt});
}

Model poly(std::vector<double> f, std::vector<double> D, std::vector<double> g) {
  return Model::from_polynomials("t", Polynomial(std::move(f)), Polynomial(std::move(D)), Polynomial(std::move(g)));
}
}  // namespace

TEST_CASE("xi(phi) for the classical member of the pair") {
  const Model m = preset("remark_9_3_model2");
  const ShootingResult s = integrate_backward_from_one(m, 0.0, 0.0);
  CHECK(xi_of_phi(m, s, 0.25) == doctest::Approx(std::log(3.0)).epsilon(1e-8));
  CHECK(std::abs(xi_of_phi(m, s, 0.5)) < 1e-14);
  CHECK(xi_of_phi(m, s, 0.75) == doctest::Approx(-std::log(3.0)).epsilon(1e-8));
}

TEST_CASE("sharp member reaches 0 at ln 2 with slope -1") {
  const FrontProfile p = wavefront_profile("remark_9_3_model1");
  CHECK(std::abs(p.xi0 - std::numbers::ln2) < 1e-6);
  CHECK(std::isinf(p.a));
  CHECK(p.kind_at_zero == Regularity::sharp);
  CHECK(p.confidence_zero == "resolved-numerically");
  REQUIRE(p.slope_at_xi0.kind == EndpointSlope::Kind::finite);
  CHECK(p.slope_at_xi0.value == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(p.kind_at_one == Regularity::classical);
  CHECK(p.phi_at(1.0) == 0.0);  // constant beyond xi0
}

TEST_CASE("classical member never reaches either equilibrium") {
  const FrontProfile p = wavefront_profile("remark_9_3_model2");
  CHECK(std::isinf(p.xi0));
  CHECK(std::isinf(p.a));
  CHECK(p.kind_at_zero == Regularity::classical);
  CHECK(p.kind_at_one == Regularity::classical);
  CHECK(p.phi_at(std::log(3.0)) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("profile samples are strictly decreasing and satisfy D phi' = z") {
  const Model m = preset("remark_6_2");
  const ShootingResult s = integrate_backward_from_one(m, 1.0, -0.1);
  const FrontProfile p = build_profile(m, s);
  for (std::size_t i = 1; i < p.xi.size(); ++i) {
    CHECK(p.xi[i] > p.xi[i - 1]);
    CHECK(p.phi[i] < p.phi[i - 1]);
  }
  for (std::size_t i = 0; i < p.xi.size(); i += 97) {
    const double x = p.phi[i];
    if (x <= s.phi_min() || x >= s.phi_max()) continue;
    CHECK(m.D(x) * p.dphi[i] == doctest::Approx(s.z_at(x)).epsilon(1e-10));
  }
}

TEST_CASE("profile ODE residual from the samples") {
  // (D phi')' + (c - h) phi' + g = 0, derivative of w = D(phi) phi' by
  // three-point differences in xi. The stencil itself is only good to a few
  // 1e-6 on this mesh (the exact profiles give the same figure).
  for (const char* name : {"remark_9_3_model1", "remark_9_3_model2"}) {
    const Model m = preset(name);
    const FrontProfile p = wavefront_profile(name);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < p.xi.size(); ++i) {
      if (p.phi[i] < 1e-3 || p.phi[i] > 1.0 - 1e-3) continue;
      const double h0 = p.xi[i] - p.xi[i - 1], h1 = p.xi[i + 1] - p.xi[i];
      const auto w = [&](std::size_t k) { return m.D(p.phi[k]) * p.dphi[k]; };
      const double dw = (-h1 / (h0 * (h0 + h1))) * w(i - 1) + ((h1 - h0) / (h0 * h1)) * w(i) +
                        (h0 / (h1 * (h0 + h1))) * w(i + 1);
      worst = std::max(worst, std::abs(dw + (p.c - m.h(p.phi[i])) * p.dphi[i] + m.g(p.phi[i])));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("run from z(1) < 0 reaches 1 with infinite slope") {
  const Model m = preset("remark_6_2");
  const FrontProfile p = build_profile(m, integrate_backward_from_one(m, 1.0, -0.1));
  CHECK(std::isfinite(p.a));
  CHECK(p.slope_at_a.kind == EndpointSlope::Kind::minus_infinity);
  CHECK(p.kind_at_one == Regularity::sharp);
  CHECK(p.phi_at(p.a - 1.0) == 1.0);
}

TEST_CASE("shift covariance of the normalization") {
  for (const char* name : {"remark_9_3_model1", "remark_9_3_model2"}) {
    const FrontProfile p5 = wavefront_profile(name, 0.5);
    const FrontProfile p7 = wavefront_profile(name, 0.7);
    // phi_07(xi) = phi_05(xi + s) with phi_05(-s) = 0.7... i.e. s = xi_05(0.7)
    const Model m = preset(name);
    const double shift = xi_of_phi(m, integrate_backward_from_one(m, 0.0, 0.0), 0.7, 0.5);
    double worst = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.01) worst = std::max(worst, std::abs(p7.phi_at(x) - p5.phi_at(x + shift)));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("endpoint slope formulas at 1") {
  // D'(1) = 0, g(1) = 1, h(1) = 0, c = 2: g(1) / (h(1) - c)
  CHECK(slope_at_one(poly({}, {1.0, -2.0, 1.0}, {1.0}), 2.0, 0.0).value == doctest::Approx(-0.5));
  // D'(1) = -1, g(1) = 1, h(1) = c = 0: 2 / (0 - sqrt 4)
  const EndpointSlope s = slope_at_one(poly({}, {1.0, -1.0}, {1.0}), 0.0, 0.0);
  CHECK(s.kind == EndpointSlope::Kind::finite);
  CHECK(s.value == doctest::Approx(-1.0));
  CHECK(slope_at_one(poly({}, {1.0, -2.0, 1.0}, {1.0}), -1.0, 0.0).kind == EndpointSlope::Kind::minus_infinity);
  CHECK(slope_at_one(poly({}, {1.0, -1.0}, {1.0}), 0.0, -0.3).kind == EndpointSlope::Kind::minus_infinity);
  CHECK(slope_at_one(poly({}, {1.0, -2.0, 1.0}, {0.0, 1.0, -1.0}), 2.0, 0.0).kind ==
        EndpointSlope::Kind::indeterminate);
}

TEST_CASE("classification tree at 0") {
  // D(0) = 0, D'(0) = 1, h(0) = 0, c = c* = 2 > h(0): sharp with slope -2
  const Model lin = poly({}, {0.0, 1.0}, {0.0, 1.0, -1.0});
  const ZeroClassification k = classify_at_zero(lin, 2.0, 2.0, 0.0, std::nullopt);
  CHECK(k.kind == Regularity::sharp);
  CHECK(k.slope.value == doctest::Approx(-2.0));

  const ZeroClassification pair = classify_at_zero(preset("remark_9_3_model1"), 0.0, 0.0, 0.0, std::nullopt);
  CHECK(pair.kind == Regularity::indeterminate);

  const ZeroClassification kpp = classify_at_zero(preset("fisher"), 3.0, 2.0, 0.0, std::nullopt);
  CHECK(kpp.kind == Regularity::classical);
  CHECK(kpp.xi0_finite == std::optional<bool>(false));

  CHECK_THROWS_AS((void)classify_at_zero(lin, 3.0, 2.0, 0.0, std::nullopt), Refusal);
  CHECK(classify_at_zero(lin, 3.0, 2.0, -5.0, -1.0).kind == Regularity::sharp);
  CHECK_THROWS_AS((void)classify_at_zero(preset("oscillatory_8_3"), 0.0, 0.0, 0.0, std::nullopt), Refusal);
}

TEST_CASE("profiles need the split and a front") {
  const Model osc = preset("oscillatory_8_3");
  CHECK_THROWS_AS((void)build_profile(osc, integrate_backward_from_one(osc, 0.0, 0.0)), Refusal);
  const Model m = preset("remark_6_2");
  CHECK_THROWS_AS((void)build_profile(m, integrate_backward_from_one(m, 1.0, -1.49)), Refusal);
}
