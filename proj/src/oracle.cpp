#include "twf/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include "twf/assumptions.hpp"
#include "twf/errors.hpp"
#include "twf/presets.hpp"
#include "twf/singular_ode.hpp"

namespace twf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZTol = 1e-6;
constexpr double kCStarTol = 1e-3;
constexpr double kProfileTol = 1e-4;
constexpr double kEndpointTol = 1e-6;
constexpr double kSlopeTol = 1e-4;
constexpr double kResidualTol = 1e-12;
// A missing limit must oscillate by at least this much to count as missing.
constexpr double kMinOscillation = 1e-2;
// Stiff stretches are integrated at 1e-6 relative, and solutions that merge
// onto a slow manifold cannot be ordered more finely than that.
constexpr double kOrderRelTol = 1e-5;

const Preset& preset_of(const AnalyticFact& fact) {
  const Preset* p = find_preset(fact.preset);
  if (!p) throw ModelError("fact refers to unknown preset '" + fact.preset + "'");
  return *p;
}

std::vector<AnalyticFact> make_facts() {
  std::vector<AnalyticFact> out;
  const auto add = [&](std::string preset, FactKind kind, std::string description, std::string citation,
                       double value = 0.0, SlopeSite site = SlopeSite::z_at_one, int endpoint = 0) {
    out.push_back({std::move(preset), kind, std::move(description), std::move(citation), value, site,
                   endpoint});
  };
  const std::string wavefront_z = "explicit wavefront of the reduced problem at c = c* = h(0)";
  add("remark_6_2", FactKind::exact_z, "z = phi^2 (phi - 1) at c = 0, z(1) = 0", wavefront_z);
  add("remark_9_3_model1", FactKind::exact_z, "z = phi^2 (phi - 1) at c = 0, z(1) = 0", wavefront_z);
  add("remark_9_3_model2", FactKind::exact_z, "z = phi^2 (phi - 1) at c = 0, z(1) = 0", wavefront_z);
  add("counterexample_6_2b", FactKind::exact_z, "z = -phi^2 at c = 0, z(1) = -1",
      "a second solution through the origin ends below zero, so c* alone does not fix z(1)");
  add("oscillatory_7_2", FactKind::exact_z, "z = -(2 + sin log(1-phi)) (1-phi) phi^2 at c = 0",
      "explicit solution whose slope at 1 does not exist");
  add("oscillatory_8_3", FactKind::exact_z, "z = -(2 + sin log phi) (1-phi)^2 phi at c = 0",
      "explicit solution whose slope at 0 does not exist");

  const std::string cstar_h0 = "the explicit wavefront at c = h(0) forces c* = h(0)";
  add("remark_6_2", FactKind::exact_c_star, "c* = 0", cstar_h0, 0.0);
  add("remark_9_3_model1", FactKind::exact_c_star, "c* = 0", cstar_h0, 0.0);
  add("remark_9_3_model2", FactKind::exact_c_star, "c* = 0", cstar_h0, 0.0);
  add("counterexample_6_2b", FactKind::exact_c_star, "c* = 0", cstar_h0, 0.0);
  add("fisher", FactKind::exact_c_star, "c* = 2",
      "the reaction lower bound and the pointwise upper bound on c* coincide", 2.0);

  add("remark_9_3_model1", FactKind::exact_profile, "phi = 1 - e^xi / 2, reaching 0 at xi = ln 2",
      "same z, different diffusivity: this profile is sharp at 0");
  add("remark_9_3_model2", FactKind::exact_profile, "phi = 1 / (1 + e^xi)",
      "same z, different diffusivity: this profile is classical at 0");

  add("remark_6_2", FactKind::exact_slope, "z'(1) = 1", "slope of z at 1 from the endpoint quadratic",
      1.0, SlopeSite::z_at_one);
  add("remark_9_3_model1", FactKind::exact_slope, "phi'(ln 2) = -1",
      "one-sided slope of the sharp profile at its zero", -1.0, SlopeSite::profile_at_xi0);
  add("remark_9_3_model2", FactKind::exact_slope, "phi' -> 0 as xi -> infinity",
      "classical profiles flatten at 0", 0.0, SlopeSite::profile_at_xi0);

  add("oscillatory_7_2", FactKind::nonexistence, "q'(1) does not exist: slope of z at 1 refused",
      "without a limit of q/(1 - phi) at 1 the slope of z at 1 is undefined", 0.0, SlopeSite::z_at_one, 1);
  add("oscillatory_8_3", FactKind::nonexistence, "q'(0) does not exist: s_pm refused",
      "without a limit of q/phi at 0 the slope of z at 0 is undefined", 0.0, SlopeSite::z_at_one, 0);
  return out;
}

FactCheck make_check(const AnalyticFact& fact, double deviation, double tolerance, std::string detail) {
  FactCheck c;
  c.fact = &fact;
  c.deviation = deviation;
  c.tolerance = tolerance;
  c.pass = std::isfinite(deviation) && deviation <= tolerance;
  c.detail = std::move(detail);
  return c;
}

void require_kind(const AnalyticFact& fact, std::initializer_list<FactKind> kinds) {
  for (auto k : kinds)
    if (fact.kind == k) return;
  throw ModelError("fact kind " + std::string(to_string(fact.kind)) + " does not match the artifact");
}

double relative_gap(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// z_a <= z_b + tol on a grid over the common range; returns the worst excess.
double order_excess(const ShootingResult& a, const ShootingResult& b, double* where) {
  const double lo = std::max(a.phi_min(), b.phi_min());
  const double hi = std::min(a.phi_max(), b.phi_max());
  double worst = -kInf;
  constexpr int kPoints = 200;
  for (int i = 0; i <= kPoints; ++i) {
    const double x = lo + (hi - lo) * i / kPoints;
    const double za = a.z_at(x), zb = b.z_at(x);
    const double tol = kOrderRelTol * std::max(std::abs(za), std::abs(zb)) + 1e-14;
    const double excess = za - zb - tol;
    if (excess > worst) {
      worst = excess;
      if (where) *where = x;
    }
  }
  return worst;
}

}  // namespace

std::string_view to_string(FactKind k) noexcept {
  switch (k) {
    case FactKind::exact_z: return "exact_z";
    case FactKind::exact_c_star: return "exact_c_star";
    case FactKind::exact_profile: return "exact_profile";
    case FactKind::exact_slope: return "exact_slope";
    case FactKind::nonexistence: return "nonexistence";
  }
  return "?";
}

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::c_star: return "c_star";
    case Quantity::beta: return "beta";
    case Quantity::beta_hat: return "beta_hat";
  }
  return "?";
}

const std::vector<AnalyticFact>& analytic_facts() {
  static const std::vector<AnalyticFact> facts = make_facts();
  return facts;
}

double fact_residual(const AnalyticFact& fact) {
  const Preset& p = preset_of(fact);
  const Model m = p.build();
  constexpr int kPoints = 1000;
  double worst = 0.0;
  switch (fact.kind) {
    case FactKind::exact_z: {
      const ExactZ& ez = *p.facts.exact_z;
      for (int i = 1; i <= kPoints; ++i) {
        const double x = static_cast<double>(i) / (kPoints + 1);
        const double z = ez.z(x);
        worst = std::max(worst, std::abs(z * ez.zdot(x) - (m.h(x) - ez.c) * z + m.q(x)));
      }
      return worst;
    }
    case FactKind::exact_c_star: {
      if (p.facts.c_star_from_bounds) {
        const SpeedBounds b = analytic_bounds(m);
        return std::max(std::abs(b.lower - fact.value),
                        std::abs(b.upper_pointwise.value_or(kInf) - fact.value));
      }
      const ExactZ& ez = *p.facts.exact_z;
      return std::abs(fact.value - m.h(0.0)) + std::abs(ez.c - fact.value) + std::abs(ez.z(0.0));
    }
    case FactKind::exact_profile: {
      const ExactProfile& ep = *p.facts.profile;
      const ExactZ& ez = *p.facts.exact_z;
      const double hi = std::min(ep.xi0, 5.0);
      for (int i = 0; i < kPoints; ++i) {
        const double xi = -5.0 + (hi + 5.0) * i / kPoints;
        const double phi = ep.phi(xi);
        worst = std::max(worst, std::abs(m.D(phi) * ep.dphi(xi) - ez.z(phi)));
      }
      return worst;
    }
    case FactKind::exact_slope: {
      if (fact.slope_site == SlopeSite::z_at_one) return std::abs(p.facts.exact_z->zdot(1.0) - fact.value);
      const ExactProfile& ep = *p.facts.profile;
      const double at = std::isfinite(ep.xi0) ? ep.xi0 - 1e-13 : 40.0;
      return std::abs(ep.dphi(at) - fact.value);
    }
    case FactKind::nonexistence: {
      double lo = kInf, hi = -kInf;
      for (int k = 50; k <= 600; ++k) {
        const double s = std::pow(10.0, -k / 50.0);
        const double v = fact.endpoint == 0 ? m.q(s) / s : m.q(1.0 - s) / s;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return -(hi - lo);
    }
  }
  return kInf;
}

FactCheck verify_fact(const AnalyticFact& fact, const ShootingResult& shot) {
  require_kind(fact, {FactKind::exact_z, FactKind::exact_slope});
  const Preset& p = preset_of(fact);
  if (fact.kind == FactKind::exact_slope) {
    if (fact.slope_site != SlopeSite::z_at_one || !shot.slope_at_one_estimate)
      throw ModelError("shot carries no slope estimate at 1");
    const double got = *shot.slope_at_one_estimate;
    return make_check(fact, relative_gap(got, fact.value), kSlopeTol, "estimated z'(1) = " + fmt(got));
  }
  const ExactZ& ez = *p.facts.exact_z;
  if (std::abs(shot.c - ez.c) > 1e-12)
    throw ModelError("shot speed differs from the speed of the exact solution");
  constexpr double lo = 1e-4, hi = 1.0 - 1e-4;
  if (!shot.succeeded() || shot.phi_min() > lo || shot.phi_max() < hi)
    throw ModelError("shot does not cover [1e-4, 1 - 1e-4]");
  double worst = 0.0, at = lo;
  for (int i = 0; i <= 10000; ++i) {
    const double x = lo + (hi - lo) * i / 10000.0;
    const double d = std::abs(shot.z_at(x) - ez.z(x));
    if (d > worst) {
      worst = d;
      at = x;
    }
  }
  return make_check(fact, worst, kZTol, "sup |z - z_exact| on [1e-4, 1-1e-4], attained at phi = " + fmt(at));
}

FactCheck verify_fact(const AnalyticFact& fact, const CriticalSpeedResult& result) {
  require_kind(fact, {FactKind::exact_c_star});
  return make_check(fact, std::abs(result.c_star - fact.value), kCStarTol,
                    "computed c* = " + fmt(result.c_star));
}

FactCheck verify_fact(const AnalyticFact& fact, const FrontProfile& profile) {
  require_kind(fact, {FactKind::exact_profile, FactKind::exact_slope});
  const Preset& p = preset_of(fact);
  const ExactProfile& ep = *p.facts.profile;
  if (fact.kind == FactKind::exact_slope) {
    if (fact.slope_site != SlopeSite::profile_at_xi0) throw ModelError("slope fact is not about a profile");
    if (profile.slope_at_xi0.kind != EndpointSlope::Kind::finite)
      return make_check(fact, kInf, kSlopeTol, "computed slope at xi0 is not finite");
    const double got = profile.slope_at_xi0.value;
    return make_check(fact, relative_gap(got, fact.value), kSlopeTol, "computed slope at xi0 = " + fmt(got));
  }
  if (std::abs(profile.normalization - 0.5) > 1e-15)
    throw ModelError("exact profiles are normalized by phi(0) = 1/2");
  const double hi = std::min(ep.xi0, 5.0);
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double xi = -5.0 + (hi + 5.0) * i / 10000.0;
    worst = std::max(worst, std::abs(profile.phi_at(xi) - ep.phi(xi)));
  }
  std::string detail = "sup |phi - phi_exact| on [-5, " + fmt(hi) + "]";
  // endpoints must agree too: infinite together, finite within 1e-6
  const auto endpoint_gap = [](double got, double want) {
    if (std::isinf(want) || std::isinf(got)) return got == want ? 0.0 : kInf;
    return std::abs(got - want) <= kEndpointTol ? 0.0 : kInf;
  };
  const double e = std::max(endpoint_gap(profile.xi0, ep.xi0), endpoint_gap(profile.a, ep.a));
  detail += "; xi0 = " + fmt(profile.xi0) + " (exact " + fmt(ep.xi0) + "), a = " + fmt(profile.a);
  return make_check(fact, std::max(worst, e), kProfileTol, detail);
}

FactCheck run_fact(const AnalyticFact& fact, const IntegratorConfig& cfg) {
  const Preset& p = preset_of(fact);
  const Model m = p.build();
  const double residual = fact_residual(fact);
  const bool residual_ok =
      fact.kind == FactKind::nonexistence ? residual < -kMinOscillation : residual <= kResidualTol;
  FactCheck check;
  try {
    switch (fact.kind) {
      case FactKind::exact_z: {
        const ExactZ& ez = *p.facts.exact_z;
        if (!m.q_dot_at_one()) {
          check = make_check(fact, residual, kResidualTol,
                             "no shot: the start at 1 needs q'(1); checked through the defining relation");
          break;
        }
        check = verify_fact(fact, integrate_backward_from_one(m, ez.c, ez.b, cfg));
        break;
      }
      case FactKind::exact_c_star:
        check = verify_fact(fact, critical_speed(m, cfg));
        break;
      case FactKind::exact_profile:
      case FactKind::exact_slope: {
        if (fact.kind == FactKind::exact_slope && fact.slope_site == SlopeSite::z_at_one) {
          check = verify_fact(fact, integrate_backward_from_one(m, p.facts.exact_z->c, 0.0, cfg));
          break;
        }
        const double c = p.facts.profile->c;
        const auto shot = integrate_backward_from_one(m, c, 0.0, cfg);
        const auto prof = build_profile(m, shot, {}, ClassificationContext{*p.facts.c_star, std::nullopt});
        check = verify_fact(fact, prof);
        break;
      }
      case FactKind::nonexistence: {
        try {
          if (fact.endpoint == 1)
            (void)r_plus(m, 0.0);
          else
            (void)s_pm(m, 0.0);
          check = make_check(fact, kInf, 0.0, "call was not refused");
        } catch (const Refusal& e) {
          check = make_check(fact, 0.0, 0.0, std::string("refused: ") + e.what());
        }
        break;
      }
    }
  } catch (const Error& e) {
    check = make_check(fact, kInf, 0.0, std::string("error: ") + e.what());
  }
  if (!residual_ok) {
    check.pass = false;
    check.detail += "; defining relation residual " + fmt(residual) + " too large";
  }
  return check;
}

std::vector<FactCheck> analytic_suite(const IntegratorConfig& cfg) {
  std::vector<FactCheck> out;
  for (const auto& f : analytic_facts()) out.push_back(run_fact(f, cfg));
  return out;
}

// ---- reference solver -----------------------------------------------------

ReferenceResult reference_bisection(const Model& model, Quantity quantity, std::optional<double> c,
                                    const ThresholdConfig& tcfg) {
  if (quantity != Quantity::c_star && !c) throw ModelError("beta needs a speed");
  ReferenceResult r;
  r.quantity = quantity;
  r.c = c;
  for (const double eps0 : {1e-6, 1e-7, 1e-8}) {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.eps0 = eps0;
    const double c_star = critical_speed(model, cfg, tcfg).c_star;
    std::optional<double> v = c_star;
    if (quantity != Quantity::c_star) {
      const BetaResult br = beta_thresholds(model, *c, c_star, cfg, tcfg);
      v = quantity == Quantity::beta ? br.beta : br.beta_hat;
    }
    if (!v) {
      r.note = "threshold unknown at eps0 = " + fmt(eps0);
      return r;
    }
    r.eps0.push_back(eps0);
    r.runs.push_back(*v);
  }
  const auto [lo, hi] = std::minmax_element(r.runs.begin(), r.runs.end());
  r.spread = *hi - *lo;
  if (r.spread <= 10.0 * tcfg.c_tol)
    r.value = r.runs.back();
  else
    r.note = "unstable: runs spread by " + fmt(r.spread);
  return r;
}

std::string config_hash(const IntegratorConfig& cfg, const ThresholdConfig& tcfg) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "rel_tol=%.17g;abs_tol=%.17g;eps0=%.17g;min_step=%.17g;c_tol=%.17g;b_rel_tol=%.17g",
                cfg.rel_tol, cfg.abs_tol, cfg.eps0, cfg.min_step, tcfg.c_tol, tcfg.b_rel_tol);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (const char* s = buf; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 1099511628211ull;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<BaselineTarget>& baseline_targets() {
  static const std::vector<BaselineTarget> targets = {
      {"remark_6_2", Quantity::c_star, std::nullopt},
      {"counterexample_6_2b", Quantity::c_star, std::nullopt},
      {"fisher", Quantity::c_star, std::nullopt},
      {"remark_6_2", Quantity::beta, 1.0},
      {"remark_6_2", Quantity::beta_hat, 1.0},
      {"fisher", Quantity::beta, 3.0},
      {"fisher", Quantity::beta_hat, 3.0},
  };
  return targets;
}

std::vector<BaselineEntry> mint_baselines(std::vector<std::string>* unstable) {
  std::vector<BaselineEntry> out;
  IntegratorConfig ref;
  ref.rel_tol = 1e-13;
  ref.eps0 = 1e-8;
  const ThresholdConfig tcfg;
  for (const auto& t : baseline_targets()) {
    const Model m = find_preset(t.id)->build();
    const ReferenceResult r = reference_bisection(m, t.quantity, t.c, tcfg);
    if (!r.stable()) {
      if (unstable) unstable->push_back(t.id + " " + std::string(to_string(t.quantity)) + ": " + r.note);
      continue;
    }
    BaselineEntry e;
    e.id = t.id;
    e.quantity = t.quantity;
    e.c = t.c;
    e.value = *r.value;
    e.cfg_hash = config_hash(ref, tcfg);
    e.provenance = "reference bisection at rel_tol 1e-13, eps0 in {1e-6, 1e-7, 1e-8}, spread " + fmt(r.spread);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RegressionCheck> regression_suite(const std::vector<BaselineEntry>& baseline,
                                              const IntegratorConfig& cfg, const ThresholdConfig& tcfg) {
  std::vector<RegressionCheck> out;
  for (const auto& e : baseline) {
    RegressionCheck rc;
    rc.entry = e;
    try {
      const Preset* p = find_preset(e.id);
      if (!p) throw ModelError("unknown preset '" + e.id + "'");
      const Model m = p->build();
      const double c_star = critical_speed(m, cfg, tcfg).c_star;
      if (e.quantity == Quantity::c_star) {
        rc.computed = c_star;
        rc.tolerance = 10.0 * tcfg.c_tol;
      } else {
        if (!e.c) throw ModelError("baseline entry for beta has no speed");
        const BetaResult br = beta_thresholds(m, *e.c, c_star, cfg, tcfg);
        const auto v = e.quantity == Quantity::beta ? br.beta : br.beta_hat;
        if (!v) throw ConvergenceError("threshold unknown");
        rc.computed = *v;
        rc.tolerance = 10.0 * br.b_tol;
      }
      rc.deviation = std::abs(rc.computed - e.value);
      rc.pass = rc.deviation <= rc.tolerance;
    } catch (const Error& ex) {
      rc.error = ex.what();
      rc.pass = false;
    }
    out.push_back(std::move(rc));
  }
  return out;
}

// ---- random corpus --------------------------------------------------------

std::vector<CorpusMember> random_corpus(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const auto draw = [&](int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    return Polynomial(c);
  };
  // positive on the closed interval
  const auto draw_positive = [&](int max_degree) {
    for (;;) {
      Polynomial p = draw(max_degree);
      if (p(0.0) > 0.0 && p(1.0) > 0.0 && positive_on_open(p)) return p;
    }
  };
  const Polynomial x({0.0, 1.0}), one_minus_x({1.0, -1.0});

  std::vector<CorpusMember> out;
  for (int i = 0; static_cast<int>(out.size()) < size; ++i) {
    const bool wavefront = out.size() % 2 == 0;
    Polynomial D, g, f;
    if (wavefront) {
      D = x * draw_positive(3);
      g = x * one_minus_x * draw_positive(2);
    } else {
      D = one_minus_x * draw_positive(3);
      g = x * draw_positive(3);
    }
    f = x * draw(3);
    CorpusMember m;
    m.id = "corpus-" + std::to_string(seed) + "-" + std::to_string(out.size());
    const auto vec = [](const Polynomial& p) {
      return std::vector<double>(p.coefficients().begin(), p.coefficients().end());
    };
    m.spec = ModelSpec{vec(f), vec(D), vec(g), std::nullopt, m.id};
    const Model model = Model::from_polynomials(m.id, f, D, g);
    const AssumptionReport rep = validate_assumptions(model);
    const Scenario want = wavefront ? Scenario::wavefront : Scenario::semi_wavefront;
    if (rep.scenario != want || !rep.derivatives_exist()) continue;
    m.scenario = want;
    out.push_back(std::move(m));
  }
  return out;
}

// ---- property suite -------------------------------------------------------

namespace {

MemberOutcome check_member(const CorpusMember& member, const IntegratorConfig& cfg) {
  MemberOutcome out;
  out.id = member.id;
  out.scenario = member.scenario;
  const auto check = [&](const char* property, bool ok, const std::string& detail) {
    ++out.checks[property];
    if (!ok) out.violations.push_back({member.id, property, detail});
  };
  try {
    const Model m = Model::from_polynomials(member.id, Polynomial(member.spec.f_poly),
                                            Polynomial(member.spec.D_poly), Polynomial(member.spec.g_poly));
    const CriticalSpeedResult cs = critical_speed(m, cfg);
    const double cst = cs.c_star;
    out.c_star = cst;

    const SpeedBounds& bd = cs.bounds;
    const double upper = bd.upper_pointwise.value_or(kInf);
    check("sandwich", cst >= bd.lower - 1e-3 && cst <= upper + 1e-3,
          "c* = " + fmt(cst) + " outside [" + fmt(bd.lower) + ", " + fmt(upper) + "]");

    const double c = cst + 1.0;
    const BetaResult br = beta_thresholds(m, c, cst, cfg);
    out.beta = br.beta;
    out.beta_hat = br.beta_hat;
    out.b_tol = br.b_tol;
    out.certified = br.equality_certified;
    if (!br.beta) throw ConvergenceError("beta not found at c* + 1");
    const double beta = *br.beta;
    check("beta_floor", beta >= br.floor - br.b_tol,
          "beta = " + fmt(beta) + " below f(1) - c = " + fmt(br.floor));

    bool seen_admissible = false, structure_ok = true;
    for (const auto& s : br.samples) {
      if (s.slope_class != SlopeClass::failed)
        seen_admissible = true;
      else if (seen_admissible)
        structure_ok = false;
    }
    check("threshold", structure_ok, "a failed b lies above an admissible b");

    if (br.equality_certified && br.beta_hat)
      check("beta_equal", std::abs(*br.beta_hat - beta) <= 10.0 * br.b_tol,
            "|beta_hat - beta| = " + fmt(std::abs(*br.beta_hat - beta)) + " exceeds 10 b_tol");

    // admissible shots ordered in z(1), all above the barrier f - c phi
    std::vector<ShootingResult> shots;
    for (const double t : {1.0, 0.75, 0.5, 0.25, 0.0}) shots.push_back(integrate_backward_from_one(m, c, t * beta, cfg));
    for (std::size_t i = 0; i + 1 < shots.size(); ++i) {
      double at = 0.0;
      const double ex = order_excess(shots[i], shots[i + 1], &at);
      check("order_b", ex <= 0.0, "z ordering broken at phi = " + fmt(at) + " by " + fmt(ex));
    }
    // the slope classification at eps0 admits z(eps0) down to (s_minus - Delta) eps0,
    // so the barrier is resolved only to Delta eps0 near 0
    const double s_minus = s_pm(m, c).first;
    const double slack = (1.0 + std::abs(s_minus)) * cfg.eps0;
    for (const auto& s : shots) {
      double worst = -kInf, at = 0.0;
      for (std::size_t k = 0; k < s.phi.size(); ++k) {
        const double bar = m.f(s.phi[k]) - c * s.phi[k];
        const double ex = bar - s.z[k] - 1e-8 * (1.0 + std::abs(bar)) - slack;
        if (ex > worst) {
          worst = ex;
          at = s.phi[k];
        }
      }
      check("barrier", worst <= 0.0, "z below f - c phi at phi = " + fmt(at) + " by " + fmt(worst));
    }

    {
      const auto z1 = integrate_backward_from_one(m, c, 0.5 * beta, cfg);
      const auto z2 = integrate_backward_from_one(m, c + 1.0, 0.5 * beta, cfg);
      double at = 0.0;
      const double ex = order_excess(z1, z2, &at);
      check("order_c", ex <= 0.0, "fixed z(1): ordering in c broken at phi = " + fmt(at));
      const auto zeta1 = integrate_backward_from_one(m, cst + 0.5, 0.0, cfg);
      const double ex2 = order_excess(zeta1, shots.back(), &at);
      check("order_c", ex2 <= 0.0, "zeta_c not increasing in c at phi = " + fmt(at));
    }

    {
      const double cl = cst - 1.0;
      const auto zeta = integrate_backward_from_one(m, cl, 0.0, cfg);
      const double z0 = zeta.zeta_zero.value_or(zeta.z.front());
      const double A = std::max(sup_on_unit([&](double p) { return m.h(p); }, m.h(0.0)) - cl, 0.0) +
                       sup_on_unit([&](double p) { return m.q(p); }, 0.0);
      check("clamp", z0 >= -1.0 - A - 1e-9, "zeta(0) = " + fmt(z0) + " below -1 - A_c = " + fmt(-1.0 - A));
    }
  } catch (const Error& e) {
    ++out.checks["solver"];
    out.violations.push_back({member.id, "solver", e.what()});
  }
  return out;
}

}  // namespace

PropertyReport property_suite(const std::vector<CorpusMember>& corpus, const IntegratorConfig& cfg,
                              unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  PropertyReport report;
  report.members.resize(corpus.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(corpus.size(), 1)));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) report.members[i] = check_member(corpus[i], cfg);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& m : report.members) {
    for (const auto& [name, n] : m.checks) report.checks_by_property[name] += n;
    for (const auto& v : m.violations) report.violations.push_back(v);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace twf
