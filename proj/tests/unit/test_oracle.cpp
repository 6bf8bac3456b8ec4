#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twf/errors.hpp"
#include "twf/oracle.hpp"
#include "twf/presets.hpp"
#include "twf/report_io.hpp"

using namespace twf;

TEST_CASE("every fact satisfies its defining relation") {
  for (const auto& f : analytic_facts()) {
    CAPTURE(f.preset);
    CAPTURE(f.description);
    if (f.kind == FactKind::nonexistence)
      CHECK(fact_residual(f) < -1e-2);
    else
      CHECK(fact_residual(f) < 1e-12);
  }
}

TEST_CASE("analytic suite passes") {
  for (const auto& c : analytic_suite()) {
    CAPTURE(c.fact->preset);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("verify_fact rejects mismatched artifacts") {
  const AnalyticFact* z = nullptr;
  for (const auto& f : analytic_facts())
    if (f.preset == "remark_6_2" && f.kind == FactKind::exact_z) z = &f;
  REQUIRE(z);
  const Model m = find_preset("remark_6_2")->build();
  CHECK_THROWS_AS((void)verify_fact(*z, integrate_backward_from_one(m, 1.0, 0.0)), ModelError);
  CHECK_THROWS_AS((void)verify_fact(*z, CriticalSpeedResult{}), ModelError);
}

TEST_CASE("random corpus is reproducible and well formed") {
  const auto a = random_corpus(6, 20240601);
  const auto b = random_corpus(6, 20240601);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].spec.D_poly == b[i].spec.D_poly);
    CHECK(a[i].spec.g_poly == b[i].spec.g_poly);
    CHECK(a[i].spec.D_poly.size() <= 5);
    CHECK(a[i].spec.g_poly.size() <= 5);
    CHECK(a[i].scenario == (i % 2 == 0 ? Scenario::wavefront : Scenario::semi_wavefront));
  }
  CHECK(random_corpus(2, 7)[0].spec.D_poly != a[0].spec.D_poly);
}

TEST_CASE("property suite on a small corpus") {
  const PropertyReport r = property_suite(random_corpus(4, 20240601));
  CHECK(r.ok());
  CHECK(r.checks_by_property.at("sandwich") == 4);
}

TEST_CASE("reference bisection agrees across eps0") {
  const ReferenceResult r = reference_bisection(find_preset("fisher")->build(), Quantity::c_star);
  REQUIRE(r.stable());
  CHECK(std::abs(*r.value - 2.0) < 1e-4);
  CHECK(r.runs.size() == 3);
}

TEST_CASE("config hash is stable and sensitive") {
  IntegratorConfig a;
  IntegratorConfig b;
  b.eps0 = 1e-7;
  CHECK(config_hash(a, {}) == config_hash(a, {}));
  CHECK(config_hash(a, {}) != config_hash(b, {}));
}

TEST_CASE("regression baselines reproduce") {
  const auto entries = load_baselines(std::string(TWF_DATA_DIR) + "/baselines.json");
  REQUIRE_FALSE(entries.empty());
  for (const auto& c : regression_suite(entries)) {
    CAPTURE(c.entry.id);
    CHECK(c.pass);
  }
}
