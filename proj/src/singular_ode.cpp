#include "twf/singular_ode.hpp"

#include <algorithm>
#include <cmath>

#include "twf/errors.hpp"

namespace twf {

double ShootingResult::z_at(double x) const { return hermite_at(phi, z, zdot, x); }

double ShootingResult::zdot_at(double x) const {
  const double dx = 1e-7 * std::max(1e-6, phi_max() - phi_min());
  const double lo = std::max(phi_min(), x - dx), hi = std::min(phi_max(), x + dx);
  return (z_at(hi) - z_at(lo)) / (hi - lo);
}

double r_plus(const Model& model, double c) {
  const auto qd = model.q_dot_at_one();
  if (!qd)
    throw Refusal("dq/dphi(1) does not exist for model '" + model.name() +
                      "', so the slope of z at 1 is undefined",
                  "slope at 1 requires dq/dphi(1) in (-inf, 0]; oscillating q has no such limit");
  if (*qd > 0.0) throw ModelError("dq/dphi(1) > 0 contradicts q > 0 near 1");
  const double a = model.h(1.0) - c;
  if (*qd == 0.0) return std::max(0.0, a);
  return 0.5 * (a + std::sqrt(a * a - 4.0 * *qd));
}

double s_pm_threshold(const Model& model) {
  const auto qd = model.q_dot_at_zero();
  if (!qd)
    throw Refusal("dq/dphi(0) does not exist for model '" + model.name() +
                      "', so the slope of z at 0 is undefined",
                  "slopes at 0 require the limit q(phi)/phi as phi -> 0; oscillating q has none");
  return model.h(0.0) + 2.0 * std::sqrt(std::max(0.0, *qd));
}

std::pair<double, double> s_pm(const Model& model, double c) {
  const double threshold = s_pm_threshold(model);
  const double qd = *model.q_dot_at_zero();
  if (qd < 0.0) throw ModelError("dq/dphi(0) < 0 contradicts q > 0 near 0");
  const double a = model.h(0.0) - c;
  if (c < threshold)
    throw BelowAdmissibleRange("speed c = " + std::to_string(c) +
                                   " is below the admissible range c >= h(0) + 2 sqrt(dq/dphi(0)) = " +
                                   std::to_string(threshold),
                               "slope pair at 0 is real and non-positive only above this speed");
  // at the threshold itself the discriminant can round below zero
  const double r = std::sqrt(std::max(0.0, a * a - 4.0 * qd));
  // min(...) keeps s_plus <= 0 against rounding when qd == 0.
  return {0.5 * (a - r), std::min(0.0, 0.5 * (a + r))};
}

ScalarField reduced_field(const Model& model, double c) {
  ScalarField fld;
  fld.f = [&model, c](double x, double z) { return model.h(x) - c - model.q(x) / z; };
  fld.df_dy = [&model](double x, double z) { return model.q(x) / (z * z); };
  fld.df_dt = [&model](double x, double z) { return model.h_dot(x) - model.q_dot(x) / z; };
  return fld;
}

namespace {

// The same equation for u = log(-z): u' = (c - h) e^{-u} - q e^{-2u}. Every
// real u is a negative z, so no stage can leave the domain, and absolute
// error in u is relative error in z.
ScalarField log_field(const Model& model, double c) {
  ScalarField fld;
  fld.f = [&model, c](double x, double u) {
    const double e = std::exp(-u);
    return (c - model.h(x)) * e - model.q(x) * e * e;
  };
  fld.df_dy = [&model, c](double x, double u) {
    const double e = std::exp(-u);
    return (model.h(x) - c) * e + 2.0 * model.q(x) * e * e;
  };
  fld.df_dt = [&model](double x, double u) {
    const double e = std::exp(-u);
    return -model.h_dot(x) * e - model.q_dot(x) * e * e;
  };
  return fld;
}

Trajectory run(const Model& model, double c, double x0, double z0, double x1,
               const IntegratorConfig& cfg, double zero_guard) {
  IntegrateOptions opt;
  opt.negative = false;
  opt.absolute_tolerance = cfg.rel_tol;
  opt.relative_min_step = true;
  if (zero_guard > 0.0) opt.floor = std::log(zero_guard);
  Trajectory tr = integrate(log_field(model, c), x0, std::log(-z0), x1, cfg, opt);
  for (std::size_t i = 0; i < tr.y.size(); ++i) {
    const double z = -std::exp(tr.y[i]);
    tr.dy[i] *= z;
    tr.y[i] = z;
  }
  if (tr.reason == StopReason::below_floor) tr.reason = StopReason::hit_zero;
  return tr;
}

// In stiff stretches the field amplifies the error in z by the Jacobian, so
// the derivative stored at a sample can be far off. Derivatives that
// disagree with the neighbouring secants are replaced by a Fritsch-Carlson
// estimate, which keeps the Hermite interpolant close to the samples.
void screen_derivatives(const std::vector<double>& x, const std::vector<double>& y,
                        std::vector<double>& dy) {
  const std::size_t n = x.size();
  if (n < 3) return;
  std::vector<double> sec(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  const auto outside = [](double d, double a, double b) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double slack = (hi - lo) + 1e-3 * std::max(std::abs(a), std::abs(b));
    return !std::isfinite(d) || d < lo - slack || d > hi + slack;
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dl = sec[i - 1], dr = sec[i];
    if (!outside(dy[i], dl, dr)) continue;
    if (dl * dr > 0.0) {
      const double wl = 2 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double wr = (x[i + 1] - x[i]) + 2 * (x[i] - x[i - 1]);
      dy[i] = (wl + wr) / (wl / dl + wr / dr);
    } else {
      dy[i] = 0.5 * (dl + dr);
    }
  }
  // endpoints: only gross disagreements
  const auto far = [](double d, double s) { return !std::isfinite(d) || std::abs(d - s) > std::abs(s); };
  if (far(dy[0], sec[0])) dy[0] = sec[0];
  if (far(dy[n - 1], sec[n - 2])) dy[n - 1] = sec[n - 2];
}

ShootingResult from_trajectory(const Trajectory& tr, double c, ShootingResult::Direction dir) {
  ShootingResult r;
  r.c = c;
  r.direction = dir;
  r.phi = tr.t;
  r.z = tr.y;
  r.zdot = tr.dy;
  if (dir == ShootingResult::Direction::backward) {
    std::reverse(r.phi.begin(), r.phi.end());
    std::reverse(r.z.begin(), r.z.end());
    std::reverse(r.zdot.begin(), r.zdot.end());
  }
  screen_derivatives(r.phi, r.z, r.zdot);
  r.terminal = tr.reason;
  r.terminal_phi = tr.t_stop;
  return r;
}

// Start value for the z(1) = 0 branch at distance psi from 1.
double start_near_one(const Model& model, double c, double psi) {
  const double r = r_plus(model, c);
  if (r > 0.0) return -r * psi;
  // r_plus = 0 happens only when dq/dphi(1) = 0. Then z follows -q/(c - h(1))
  // if c > h(1), else the square-root balance z^2 ~ 2 q psi / 3.
  const double qv = model.q(1.0 - psi);
  const double gap = c - model.h(1.0);
  if (gap > 0.0) return -std::max(qv / gap, 1e-300);
  return -std::max(std::sqrt(2.0 * qv * psi / 3.0), 1e-300);
}

}  // namespace

std::optional<double> continue_slope_to_zero(const Model& model, double c, double phi0, double z0,
                                             const IntegratorConfig& cfg) {
  constexpr double kLogEnd = -1e7;
  const double h0 = model.h(0.0);
  const double k0 = model.q_over_phi(0.0);
  ScalarField fld;
  auto hv = [&model, h0](double L) { return L < -700.0 ? h0 : model.h(std::exp(L)); };
  auto kv = [&model, k0](double L) { return L < -700.0 ? k0 : model.q_over_phi(std::exp(L)); };
  fld.f = [=](double L, double w) { return hv(L) - c - kv(L) / w - w; };
  fld.df_dy = [=](double L, double w) { return kv(L) / (w * w) - 1.0; };
  fld.df_dt = [](double, double) { return 0.0; };
  IntegratorConfig lc = cfg;
  lc.abs_tol = cfg.rel_tol * 1e-2;
  lc.min_step = 1e-12;
  IntegrateOptions opt;
  const double w0 = z0 / phi0;
  opt.floor = -1e6 * (1.0 + std::abs(w0) + std::abs(h0 - c));
  const Trajectory tr = integrate(fld, std::log(phi0), w0, kLogEnd, lc, opt);
  if (tr.reason != StopReason::reached_end) return std::nullopt;
  return tr.y.back();
}

ShootingResult integrate_backward_from_one(const Model& model, double c, double b,
                                           const IntegratorConfig& cfg) {
  cfg.validate();
  if (b > 0.0) throw ModelError("boundary value b must be <= 0");
  double x0 = 1.0, z0 = b, shift = 0.0;
  if (b == 0.0) {
    shift = cfg.eps0;
    x0 = 1.0 - cfg.eps0;
    z0 = start_near_one(model, c, cfg.eps0);
  }
  const Trajectory tr = run(model, c, x0, z0, cfg.eps0, cfg, 0.0);
  ShootingResult r = from_trajectory(tr, c, ShootingResult::Direction::backward);
  r.b = b;
  r.start_shift = shift;
  if (!r.succeeded()) return r;

  const double xe = r.phi.front(), ze = r.z.front();
  r.slope_at_zero_raw = ze / xe;
  r.zeta_zero = ze - xe * (model.h(0.0) - c - model.q(xe) / ze);
  r.slope_at_zero_estimate = r.slope_at_zero_raw;
  const auto qd0 = model.q_dot_at_zero();
  if (qd0 && *qd0 > 0.0) {
    if (auto w = continue_slope_to_zero(model, c, xe, ze, cfg)) r.slope_at_zero_estimate = *w;
  }

  if (b == 0.0) {
    // Richardson on the secant slope, which is first order in psi.
    constexpr double psi = 1e-3;
    auto Q = [&r](double p) { return r.z_at(1.0 - p) / (-p); };
    if (r.phi_max() >= 1.0 - psi) r.slope_at_one_estimate = 2.0 * Q(psi) - Q(2.0 * psi);
  }
  return r;
}

ShootingResult integrate_forward_from_zero(const Model& model, double c, Branch branch,
                                           const IntegratorConfig& cfg) {
  cfg.validate();
  const auto [sm, sp] = s_pm(model, c);
  const double s = branch == Branch::s_minus ? sm : sp;
  if (s == 0.0)
    throw Refusal("forward start with zero slope is not locally unique; use a backward shot",
                  "zero slope at (0,0) admits a family of solutions");
  Trajectory tr = run(model, c, cfg.eps0, s * cfg.eps0, 1.0, cfg, 10.0 * cfg.abs_tol);
  // Approaching an interior zero, z ~ sqrt(phi_dagger - phi) and the step
  // size collapses before |z| reaches the guard; that is the same event.
  if (tr.reason == StopReason::step_underflow) {
    double zmax = 0.0;
    for (double z : tr.y) zmax = std::max(zmax, std::abs(z));
    if (std::abs(tr.y.back()) < 1e-3 * zmax) tr.reason = StopReason::hit_zero;
  }
  ShootingResult r = from_trajectory(tr, c, ShootingResult::Direction::forward);
  r.start_shift = cfg.eps0;
  r.b = r.z.back();
  r.slope_at_zero_estimate = s;
  r.slope_at_zero_raw = s;
  return r;
}

ComparisonVerdict check_upper_lower(const Model& model, double c, const std::vector<double>& phi,
                                    const std::vector<double>& eta, SolutionKind kind, double tol) {
  ComparisonVerdict v;
  v.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    const double dx = phi[i + 1] - phi[i];
    const double xm = 0.5 * (phi[i] + phi[i + 1]);
    const double em = 0.5 * (eta[i] + eta[i + 1]);
    const double slope = (eta[i + 1] - eta[i]) / dx;
    const double rhs = model.h(xm) - c - model.q(xm) / em;
    const double margin = kind == SolutionKind::upper ? slope - rhs : rhs - slope;
    if (margin < v.worst_margin) v.worst_margin = margin;
    if (margin <= tol && !v.first_violation_phi) v.first_violation_phi = xm;
  }
  v.strict = !v.first_violation_phi.has_value();
  return v;
}

}  // namespace twf
