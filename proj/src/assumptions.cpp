#include "twf/assumptions.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

namespace twf {

namespace {

constexpr int kGrid = 1000;

Verdict verdict(bool b) { return b ? Verdict::holds : Verdict::fails; }

// Golden-section (Brent) refinement of a minimum of fn on [lo, hi].
double refine_min(const std::function<double(double)>& fn, double lo, double hi) {
  auto r = boost::math::tools::brent_find_minima(fn, lo, hi, 40);
  return std::min(r.second, std::min(fn(lo), fn(hi)));
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::semi_wavefront: return "semi-wavefront";
    case Scenario::wavefront: return "wavefront";
    case Scenario::q_only: return "q-only";
  }
  return "?";
}

double min_on_open(const std::function<double(double)>& fn) {
  const double h = 1.0 / kGrid;
  double best = std::numeric_limits<double>::infinity();
  int best_i = 1;
  for (int i = 1; i < kGrid; ++i) {
    const double v = fn(i * h);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = (best_i - 1) * h;
  const double hi = (best_i + 1) * h;
  // Stay off the closed endpoints, where the function may vanish legitimately.
  return refine_min(fn, lo > 0.0 ? lo : 0.5 * h, hi < 1.0 ? hi : 1.0 - 0.5 * h);
}

double sup_on_unit(const std::function<double(double)>& fn, double limit_at_zero) {
  auto neg = [&fn](double x) { return -fn(x); };
  const double h = 1.0 / kGrid;
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 1;
  for (int i = 1; i <= kGrid; ++i) {
    const double v = fn(i * h);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = std::max((best_i - 1) * h, 1e-12);
  const double hi = std::min((best_i + 1) * h, 1.0);
  const double refined = -refine_min(neg, lo, hi);
  return std::max({best, refined, limit_at_zero});
}

bool positive_on_open(const Polynomial& p) {
  if (p.is_zero()) return false;
  if (p.coefficient(p.lowest_degree()) <= 0.0) return false;
  const Polynomial r = p.reflected();
  if (r.coefficient(r.lowest_degree()) <= 0.0) return false;
  // Interior: grid minimum, refined. Sign near the ends is settled above, so
  // a tiny positive value close to an end is not a failure.
  const double m = min_on_open([&p](double x) { return p(x); });
  return m > 0.0;
}

AssumptionReport validate_assumptions(const Model& model) {
  AssumptionReport rep;
  rep.q_dot_zero = model.q_dot_at_zero();
  rep.q_dot_one = model.q_dot_at_one();
  rep.q_dot_zero_note = model.q_dot_zero_note();
  rep.q_dot_one_note = model.q_dot_one_note();

  if (!model.is_polynomial()) {
    rep.stated = true;
    const double m = min_on_open([&model](double x) { return model.q(x); });
    rep.q_positive = verdict(model.q(0.0) == 0.0 && model.q(1.0) == 0.0 && m > 0.0);
    rep.q_linear_bound = verdict(std::isfinite(sup_on_unit(
        [&model](double x) { return model.q_over_phi(x); }, model.q_over_phi(1e-300))));
    rep.q_integrable = verdict(model.stated_integrable_at_zero());
    rep.scenario = Scenario::q_only;
    return rep;
  }

  const Polynomial& f = *model.f_poly();
  const Polynomial& D = *model.D_poly();
  const Polynomial& g = *model.g_poly();
  const Polynomial& q = *model.q_poly();

  rep.flux = verdict(f.coefficient(0) == 0.0);
  const bool D_inside = positive_on_open(D);
  const bool g_inside = positive_on_open(g);
  rep.D_zero = verdict(D_inside && D(0.0) == 0.0);
  rep.D_one = verdict(D_inside && D(1.0) == 0.0);
  rep.g_zero = verdict(g_inside && g(0.0) == 0.0 && g(1.0) > 0.0);
  rep.g_zero_one = verdict(g_inside && g(0.0) == 0.0 && g(1.0) == 0.0);
  rep.q_positive = verdict(q(0.0) == 0.0 && q(1.0) == 0.0 && positive_on_open(q));
  rep.q_linear_bound = verdict(!q.is_zero() && q.lowest_degree() >= 1);
  rep.q_integrable = verdict(!q.is_zero() && q.lowest_degree() >= 2);

  if (rep.flux == Verdict::holds && rep.q_positive == Verdict::holds) {
    if (rep.D_one == Verdict::holds && rep.g_zero == Verdict::holds)
      rep.scenario = Scenario::semi_wavefront;
    else if (rep.D_zero == Verdict::holds && rep.g_zero_one == Verdict::holds)
      rep.scenario = Scenario::wavefront;
  }
  return rep;
}

}  // namespace twf
