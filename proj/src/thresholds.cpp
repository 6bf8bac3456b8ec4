#include "twf/thresholds.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "twf/errors.hpp"

namespace twf {

std::string_view to_string(SlopeClass k) noexcept {
  switch (k) {
    case SlopeClass::s_minus: return "s_minus";
    case SlopeClass::s_plus: return "s_plus";
    case SlopeClass::failed: return "failed";
  }
  return "?";
}

namespace {

double liminf_q_over_phi(const Model& model) {
  if (auto qd = model.q_dot_at_zero()) return *qd;
  // No limit: scan a log grid toward 0.
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 4000; ++k) m = std::min(m, model.q_over_phi(std::pow(10.0, -3.0 - k * 1e-3 * 3)));
  return m;
}

}  // namespace

SpeedBounds analytic_bounds(const Model& model) {
  SpeedBounds b;
  b.lower_reac = model.h(0.0) + 2.0 * std::sqrt(std::max(0.0, liminf_q_over_phi(model)));
  b.lower = b.lower_reac;
  const double sup_q = sup_on_unit([&model](double x) { return model.q_over_phi(x); },
                                   model.q_over_phi(0.0));

  std::optional<double> sup_f;
  if (model.has_flux()) {
    const Polynomial fx = model.f_poly()->divided_by_x();
    sup_f = sup_on_unit([&fx](double x) { return fx(x); }, fx(0.0));
    b.lower_conv = sup_f;
    b.lower = std::max(b.lower, *sup_f);
    b.upper_pointwise = 2.0 * std::sqrt(std::max(0.0, sup_q)) + *sup_f;
  }

  const auto qd0 = model.q_dot_at_zero();
  if (sup_f && qd0 && *qd0 == 0.0) {
    double sup_int;
    if (model.q_poly()) {
      const Polynomial r = model.q_poly()->divided_by_x().antiderivative().divided_by_x();
      sup_int = sup_on_unit([&r](double x) { return r(x); }, r(0.0));
    } else {
      auto mean = [&model](double x) {
        using boost::math::quadrature::gauss_kronrod;
        auto integrand = [&model](double s) { return model.q_over_phi(s) ; };
        return gauss_kronrod<double, 31>::integrate(integrand, 0.0, x, 15, 1e-12) / x;
      };
      sup_int = sup_on_unit(mean, 0.0);
    }
    b.upper_integral = *sup_f + 2.0 * std::sqrt(std::max(0.0, sup_int));
  }
  return b;
}

bool is_subcritical(const Model& model, double c, const IntegratorConfig& cfg, ShootingResult* shot) {
  // Below h(0) + 2 sqrt(q'(0)) no front exists; this bound is a theorem, so
  // it takes precedence over the numerical test.
  if (c < s_pm_threshold(model)) return true;
  ShootingResult r = integrate_backward_from_one(model, c, 0.0, cfg);
  if (!r.succeeded())
    throw ConvergenceError("backward shot at c = " + std::to_string(c) + " stopped early (" +
                           std::string(to_string(r.terminal)) + ")");
  const bool sub = classify_slope(model, c, r) == SlopeClass::failed;
  if (shot) *shot = std::move(r);
  return sub;
}

SlopeClass classify_slope(const Model& model, double c, const ShootingResult& shot) {
  const auto [sm, sp] = s_pm(model, c);
  const double delta = 1.0 + std::abs(sm);
  const double x = shot.phi.front();
  const double w = shot.z.front() / x;
  if (w < sm - delta) return SlopeClass::failed;
  return w < 0.5 * (sm + sp) ? SlopeClass::s_minus : SlopeClass::s_plus;
}

CriticalSpeedResult critical_speed(const Model& model, const IntegratorConfig& cfg,
                                   const ThresholdConfig& tcfg) {
  cfg.validate();
  // Both endpoint prerequisites up front, so refusals come before any work.
  (void)s_pm_threshold(model);
  if (!model.q_dot_at_one())
    (void)r_plus(model, 0.0);
  if (!model.has_flux())
    throw Refusal("critical speed bracket needs the flux f, which model '" + model.name() +
                      "' does not define",
                  "bounds on c* involve sup f(phi)/phi");

  CriticalSpeedResult res;
  res.bounds = analytic_bounds(model);
  const double lo_b = res.bounds.lower, hi_b = *res.bounds.upper_pointwise;
  const double margin = 1e-2 * (1.0 + std::max(std::abs(lo_b), std::abs(hi_b)));
  double lo = lo_b - margin, hi = hi_b + margin;

  ShootingResult witness;
  if (!is_subcritical(model, lo, cfg))
    throw ConvergenceError("bracket invalid: lower end c = " + std::to_string(lo) +
                           " is not subcritical");
  if (is_subcritical(model, hi, cfg, &witness))
    throw ConvergenceError("bracket invalid: upper end c = " + std::to_string(hi) +
                           " is not supercritical");
  int it = 0;
  while (hi - lo > tcfg.c_tol) {
    if (++it > tcfg.max_iterations) throw ConvergenceError("critical speed bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    ShootingResult shot;
    if (is_subcritical(model, mid, cfg, &shot)) {
      lo = mid;
    } else {
      hi = mid;
      witness = std::move(shot);
    }
  }
  // The witness must belong to the reported speed.
  if (witness.phi.empty() || witness.c != hi) (void)is_subcritical(model, hi, cfg, &witness);
  res.c_star = hi;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.iterations = it;
  res.witness = std::move(witness);
  return res;
}

bool equality_condition(const AssumptionReport& report, const Model& model, double c_star,
                        double c_tol) {
  return report.q_integrable == Verdict::holds && c_star > model.h(0.0) + c_tol;
}

BetaResult beta_thresholds(const Model& model, double c, double c_star, const IntegratorConfig& cfg,
                           const ThresholdConfig& tcfg) {
  cfg.validate();
  if (!model.has_flux())
    throw Refusal("the floor f(1) - c needs the flux f, which model '" + model.name() +
                      "' does not define",
                  "beta(c) >= f(1) - c");
  if (c < c_star - tcfg.c_tol)
    throw Refusal("no solution with z(0) = 0 exists below c* = " + std::to_string(c_star),
                  "for c < c* the reduced problem has no solutions");

  BetaResult res;
  res.c = c;
  res.floor = model.f(1.0) - c;
  res.b_tol = tcfg.b_rel_tol * (1.0 + std::abs(res.floor));
  const AssumptionReport rep = validate_assumptions(model);
  res.equality_certified = equality_condition(rep, model, c_star, tcfg.c_tol);

  if (std::abs(c - c_star) <= tcfg.c_tol) {
    res.at_critical_speed = true;
    if (res.equality_certified) {
      res.beta = 0.0;
      res.beta_hat = 0.0;
      res.note = "at c = c* with q/s^2 integrable at 0 and c* > h(0), z(1) = 0 is the only solution";
    } else {
      res.note = "at c = c* the threshold is left open without integrability of q/s^2 and c* > h(0)";
    }
    return res;
  }

  auto [sm, sp] = s_pm(model, c);
  auto classify = [&](double b) {
    ShootingResult r = integrate_backward_from_one(model, c, b, cfg);
    if (!r.succeeded())
      throw ConvergenceError("backward shot from b = " + std::to_string(b) + " at c = " +
                             std::to_string(c) + " stopped early (" +
                             std::string(to_string(r.terminal)) + " at phi = " +
                             std::to_string(r.terminal_phi) + ")");
    const SlopeClass k = classify_slope(model, c, r);
    res.samples.push_back({b, k});
    return k;
  };

  // Smallest b in [floor, 0] whose class satisfies `pred`; pred(0) must hold.
  auto threshold = [&](auto pred) -> double {
    double lo = res.floor, hi = 0.0;
    if (pred(classify(lo))) return lo;
    int it = 0;
    while (hi - lo > res.b_tol) {
      if (++it > tcfg.max_iterations) throw ConvergenceError("threshold bisection did not converge");
      const double mid = 0.5 * (lo + hi);
      (pred(classify(mid)) ? hi : lo) = mid;
    }
    return hi;
  };

  if (classify(0.0) == SlopeClass::failed)
    throw ConvergenceError("b = 0 is not admissible at c = " + std::to_string(c) +
                           " although c > c*");
  res.beta = threshold([](SlopeClass k) { return k != SlopeClass::failed; });
  if (sm == sp) {
    res.degenerate = true;
    res.beta_hat = res.beta;
    res.note = "s_minus = s_plus: branches indistinguishable, beta_hat reported as beta";
  } else {
    res.beta_hat = threshold([](SlopeClass k) { return k == SlopeClass::s_plus; });
  }
  std::sort(res.samples.begin(), res.samples.end(),
            [](const BetaSample& a, const BetaSample& b) { return a.b < b.b; });
  return res;
}

}  // namespace twf
