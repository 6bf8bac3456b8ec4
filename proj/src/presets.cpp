#include "twf/presets.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace twf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Preset polynomial_preset(std::string name, std::string description, std::vector<double> f,
                         std::vector<double> D, std::vector<double> g, PresetFacts facts) {
  ModelSpec spec{std::move(f), std::move(D), std::move(g), std::nullopt, name};
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.build = [spec] {
    return Model::from_polynomials(spec.name, Polynomial(spec.f_poly), Polynomial(spec.D_poly),
                                   Polynomial(spec.g_poly));
  };
  p.facts = std::move(facts);
  p.spec = std::move(spec);
  return p;
}

// h = 3 phi (phi - 1), q = phi^3 (1 - phi); the wavefront z = phi^2 (phi - 1) at c = 0.
const std::vector<double> kCubicFlux = {0.0, 0.0, -1.5, 1.0};

ExactZ cubic_z() {
  return {0.0, 0.0, [](double p) { return p * p * (p - 1.0); },
          [](double p) { return p * (3.0 * p - 2.0); }};
}

// Oscillating in log(1 - phi): q'(1) has no limit.
Model oscillating_at_one() {
  auto lg = [](double p) { return std::log1p(-p); };
  Model::ClosedForm form;
  form.q_over_phi = [lg](double p) {
    if (p >= 1.0) return 0.0;
    const double L = lg(p);
    const double s = std::sin(L);
    return p * p * (1.0 - p) * ((s + 2.0) * (s + 2.0) + 2.0 * std::cos(L) + 0.5 * std::sin(2.0 * L));
  };
  form.q = [qp = form.q_over_phi](double p) { return p * qp(p); };
  form.h = [lg](double p) {
    if (p >= 1.0) return 0.0;
    const double L = lg(p);
    return p * (p - 1.0) * (std::cos(L) + 3.0 * std::sin(L) + 6.0);
  };
  form.q_dot_zero = 0.0;
  form.integrable_at_zero = true;  // q/s^2 = O(s)
  form.q_dot_one_note = "q(phi)/(1-phi) oscillates without limit as phi -> 1";
  return Model::from_closed_form("oscillatory_7_2", std::move(form));
}

// Oscillating in log(phi): q(phi)/phi has no limit at 0.
Model oscillating_at_zero() {
  Model::ClosedForm form;
  form.q_over_phi = [](double p) {
    const double x = std::max(p, std::numeric_limits<double>::min());
    const double L = std::log(x);
    const double u = 1.0 - p;
    return u * u * u * u * (2.0 + std::sin(L)) * (3.0 - std::cos(L) - std::sin(L));
  };
  form.q = [qp = form.q_over_phi](double p) { return p <= 0.0 ? 0.0 : p * qp(p); };
  form.h = [](double p) {
    const double x = std::max(p, std::numeric_limits<double>::min());
    const double u = 1.0 - p;
    return 2.0 * (2.0 + std::sin(std::log(x))) * u * p - 5.0 * u * u;
  };
  form.q_dot_one = 0.0;
  form.q_dot_zero_note = "q(phi)/phi oscillates between its liminf and limsup as phi -> 0";
  return Model::from_closed_form("oscillatory_8_3", std::move(form));
}

std::vector<Preset> make_registry() {
  std::vector<Preset> reg;

  {
    PresetFacts facts;
    facts.exact_z = cubic_z();
    facts.c_star = 0.0;
    reg.push_back(polynomial_preset(
        "remark_6_2", "h = 3phi(phi-1), q = phi^3(1-phi) split as D = phi^2(1-phi), g = phi; c* = h(0) = 0",
        kCubicFlux, {0.0, 0.0, 1.0, -1.0}, {0.0, 1.0}, facts));
  }
  {
    PresetFacts facts;
    facts.exact_z = cubic_z();
    facts.c_star = 0.0;
    facts.profile = ExactProfile{
        0.0, [](double xi) { return xi >= std::numbers::ln2 ? 0.0 : 1.0 - 0.5 * std::exp(xi); },
        [](double xi) { return xi >= std::numbers::ln2 ? 0.0 : -0.5 * std::exp(xi); }, -kInf,
        std::numbers::ln2, -1.0};
    reg.push_back(polynomial_preset("remark_9_3_model1",
                                    "D = phi^2, g = phi(1-phi), same h; sharp at 0 with xi0 = ln 2",
                                    kCubicFlux, {0.0, 0.0, 1.0}, {0.0, 1.0, -1.0}, facts));
  }
  {
    PresetFacts facts;
    facts.exact_z = cubic_z();
    facts.c_star = 0.0;
    facts.profile = ExactProfile{
        0.0, [](double xi) { return 1.0 / (1.0 + std::exp(xi)); },
        [](double xi) {
          const double e = std::exp(-std::abs(xi));
          return -e / ((1.0 + e) * (1.0 + e));
        },
        -kInf, kInf, 0.0};
    reg.push_back(polynomial_preset("remark_9_3_model2",
                                    "D = phi, g = phi^2(1-phi), same h; classical at 0",
                                    kCubicFlux, {0.0, 1.0}, {0.0, 0.0, 1.0, -1.0}, facts));
  }
  {
    PresetFacts facts;
    facts.c_star = 2.0;
    facts.c_star_from_bounds = true;
    reg.push_back(polynomial_preset("fisher", "f = 0, D = 1, g = phi(1-phi)", {}, {1.0},
                                    {0.0, 1.0, -1.0}, facts));
  }
  {
    PresetFacts facts;
    // A second solution through (0,0) ending at z(1) = -1, distinct from the maximal one.
    facts.exact_z = ExactZ{0.0, -1.0, [](double p) { return -p * p; },
                           [](double p) { return -2.0 * p; }};
    facts.c_star = 0.0;
    reg.push_back(polynomial_preset(
        "counterexample_6_2b",
        "q = phi^4(1-phi), h = -2phi - phi^2(1-phi); z = -phi^2 solves with z(1) = -1 at c = 0",
        {0.0, 0.0, -1.0, -1.0 / 3.0, 0.25}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, -1.0}, facts));
  }
  {
    Preset p;
    p.name = "oscillatory_7_2";
    p.description = "closed-form (h, q) with q'(1) undefined; exact z at c = 0";
    p.build = oscillating_at_one;
    p.facts.exact_z = ExactZ{0.0, 0.0, [](double x) {
                               if (x >= 1.0) return 0.0;
                               return -(2.0 + std::sin(std::log1p(-x))) * (1.0 - x) * x * x;
                             },
                             [](double x) {
                               if (x >= 1.0) return 0.0;
                               const double L = std::log1p(-x);
                               return std::cos(L) * x * x - (2.0 + std::sin(L)) * x * (2.0 - 3.0 * x);
                             }};
    p.facts.q_dot_one_missing = true;
    reg.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "oscillatory_8_3";
    p.description = "closed-form (h, q) with q'(0) undefined; exact z at c = 0";
    p.build = oscillating_at_zero;
    p.facts.exact_z = ExactZ{0.0, 0.0, [](double x) {
                               if (x <= 0.0) return 0.0;
                               return -(2.0 + std::sin(std::log(x))) * (1.0 - x) * (1.0 - x) * x;
                             },
                             [](double x) {
                               const double L = std::log(std::max(x, 1e-300));
                               return -std::cos(L) * (1.0 - x) * (1.0 - x) -
                                      (2.0 + std::sin(L)) * (1.0 - x) * (1.0 - 3.0 * x);
                             }};
    p.facts.q_dot_zero_missing = true;
    reg.push_back(std::move(p));
  }
  return reg;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> registry = make_registry();
  return registry;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace twf
