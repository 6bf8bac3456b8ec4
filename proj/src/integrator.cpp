#include "twf/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "twf/errors.hpp"

namespace twf {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0 && abs_tol > 0 && eps0 > 0 && min_step > 0 && max_steps > 0))
    throw ModelError("integrator tolerances must be positive");
  if (!(eps0 > min_step)) throw ModelError("eps0 must exceed min_step");
  if (!(eps0 < 0.25)) throw ModelError("eps0 must be below 1/4");
}

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::reached_end: return "reached_target_end";
    case StopReason::hit_zero: return "z_hit_zero";
    case StopReason::step_underflow: return "step_underflow";
    case StopReason::max_steps: return "max_steps";
    case StopReason::below_floor: return "below_floor";
  }
  return "?";
}

double hermite_at(const std::vector<double>& t, const std::vector<double>& y,
                  const std::vector<double>& dy, double at) {
  const std::size_t n = t.size();
  if (n == 0) return 0.0;
  if (n == 1) return y[0];
  const bool inc = t.back() > t.front();
  // Locate the cell [t[i], t[i+1]] containing `at`, in either orientation.
  std::size_t i;
  if (inc) {
    auto it = std::upper_bound(t.begin(), t.end(), at);
    i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  } else {
    auto it = std::upper_bound(t.begin(), t.end(), at, std::greater<>());
    i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  }
  i = std::min(i, n - 2);
  const double h = t[i + 1] - t[i];
  const double s = (at - t[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Explicit stability boundary of the pair on the negative real axis is about 3.3.
constexpr double kStiffEnter = 1.5;
constexpr double kStiffLeave = 1.0;
constexpr int kSwitchAfter = 5;
constexpr double kStiffRelTol = 1e-6;

struct StepOutcome {
  bool valid = false;  // all stages finite and sign-consistent
  double y_new = 0.0;
  double f_new = 0.0;
  double err = 0.0;  // scaled error norm
};

bool admissible(double y, bool negative) { return std::isfinite(y) && (!negative || y < 0.0); }

}  // namespace

Trajectory integrate(const ScalarField& field, double t0, double y0, double t1,
                     const IntegratorConfig& cfg, const IntegrateOptions& opt) {
  const auto& f = field.f;
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  // The absolute floor shrinks with |y| below 1: z near 0 still needs relative
  // accuracy because q/z is what drives the equation.
  // On a stiff stretch the solution is slaved to its slow manifold and the
  // linearly implicit steps run at a looser relative tolerance.
  const double stiff_rel = std::max(cfg.rel_tol, kStiffRelTol);
  bool implicit = false;
  auto scale = [&](double a, double b) {
    if (opt.absolute_tolerance > 0.0)
      return implicit ? std::max(opt.absolute_tolerance, kStiffRelTol) : opt.absolute_tolerance;
    const double m = std::max(std::abs(a), std::abs(b));
    return cfg.abs_tol * std::min(1.0, m) + (implicit ? stiff_rel : cfg.rel_tol) * m;
  };

  auto dopri = [&](double t, double y, double fy, double h) {
    StepOutcome o;
    auto ok = [&](double v) { return admissible(v, opt.negative); };
    double yy = y + h * a21 * fy;
    if (!ok(yy)) return o;
    const double k2 = f(t + c2 * h, yy);
    yy = y + h * (a31 * fy + a32 * k2);
    if (!ok(yy) || !std::isfinite(k2)) return o;
    const double k3 = f(t + c3 * h, yy);
    yy = y + h * (a41 * fy + a42 * k2 + a43 * k3);
    if (!ok(yy) || !std::isfinite(k3)) return o;
    const double k4 = f(t + c4 * h, yy);
    yy = y + h * (a51 * fy + a52 * k2 + a53 * k3 + a54 * k4);
    if (!ok(yy) || !std::isfinite(k4)) return o;
    const double k5 = f(t + c5 * h, yy);
    yy = y + h * (a61 * fy + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    if (!ok(yy) || !std::isfinite(k5)) return o;
    const double k6 = f(t + h, yy);
    const double yn = y + h * (a71 * fy + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    if (!ok(yn) || !std::isfinite(k6)) return o;
    const double k7 = f(t + h, yn);
    if (!std::isfinite(k7)) return o;
    const double e = h * (e1 * fy + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    o.valid = true;
    o.y_new = yn;
    o.f_new = k7;
    o.err = std::abs(e) / scale(y, yn);
    return o;
  };

  // Shampine's modified Rosenbrock pair (second order, third order error estimate).
  const double d = 1.0 / (2.0 + std::sqrt(2.0));
  const double e32 = 6.0 + std::sqrt(2.0);
  auto rosenbrock = [&](double t, double y, double fy, double h) {
    StepOutcome o;
    const double J = field.df_dy(t, y);
    const double T = field.df_dt ? field.df_dt(t, y) : 0.0;
    const double W = 1.0 - h * d * J;
    if (!std::isfinite(W) || W == 0.0) return o;
    const double k1 = (fy + h * d * T) / W;
    const double ym = y + 0.5 * h * k1;
    if (!admissible(ym, opt.negative)) return o;
    const double F1 = f(t + 0.5 * h, ym);
    const double k2 = (F1 - k1) / W + k1;
    const double yn = y + h * k2;
    if (!admissible(yn, opt.negative) || !std::isfinite(F1)) return o;
    const double F2 = f(t + h, yn);
    const double k3 = (F2 - e32 * (k2 - F1) - 2.0 * (k1 - fy) + h * d * T) / W;
    if (!std::isfinite(F2) || !std::isfinite(k3)) return o;
    o.valid = true;
    o.y_new = yn;
    o.f_new = F2;
    o.err = std::abs(h / 6.0 * (k1 - 2.0 * k2 + k3)) / scale(y, yn);
    return o;
  };

  Trajectory tr;
  double t = t0, y = y0, fy = f(t0, y0);
  tr.t.push_back(t);
  tr.y.push_back(y);
  tr.dy.push_back(fy);

  if (span == 0.0) {
    tr.t_stop = t;
    return tr;
  }
  if (!admissible(y, opt.negative) || !std::isfinite(fy))
    throw ConvergenceError("invalid initial state for integration");

  auto min_step_at = [&](double tt) {
    return opt.relative_min_step ? cfg.min_step * std::min(1.0, std::abs(tt)) : cfg.min_step;
  };

  // Initial step from the usual two-derivative heuristic, kept modest.
  double h = std::min(span, 1e-2 * std::max(std::abs(y), cfg.abs_tol) / std::max(std::abs(fy), 1e-300));
  h = std::clamp(h, min_step_at(t0), std::max(cfg.min_step, 1e-3 * std::max(span, 1e-3)));
  int stiff_count = 0, calm_count = 0;
  double err_old = 1e-4;

  while (true) {
    const double min_step = min_step_at(t);
    if (tr.steps + tr.rejected >= cfg.max_steps) {
      tr.reason = StopReason::max_steps;
      break;
    }
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hs = dir * h;
    StepOutcome o = implicit ? rosenbrock(t, y, fy, hs) : dopri(t, y, fy, hs);

    // A finite step already at the minimum size is taken even if its error
    // estimate is too large: thin boundary layers onto an attracting branch
    // are crossed this way, and the branch itself absorbs the local error.
    const bool forced = o.valid && std::isfinite(o.err) && o.err > 1.0 && h <= min_step * 1.0000001;
    if (forced) ++tr.forced;
    if (!forced && (!o.valid || !(o.err <= 1.0))) {
      ++tr.rejected;
      if (!o.valid) {
        // Stage left the domain or overflowed: shrink hard, give up below min_step.
        h *= 0.25;
        if (h < min_step) {
          tr.reason = opt.zero_guard > 0.0 ? StopReason::hit_zero : StopReason::step_underflow;
          break;
        }
        continue;
      }
      if (implicit) {
        h *= std::max(0.1, 0.8 * std::pow(o.err, -1.0 / 3.0));
      } else {
        h /= std::min(5.0, std::pow(o.err, 0.17) / 0.9);
        // Rejected far outside the explicit stability region: go implicit.
        if (field.df_dy && -dir * h * field.df_dy(t, y) > kStiffEnter) {
          implicit = true;
          stiff_count = calm_count = 0;
        }
      }
      h = std::max(h, min_step);
      continue;
    }

    // Accept.
    const double t_new = last ? t1 : t + hs;
    ++tr.steps;
    if (implicit) ++tr.implicit_steps;
    const double y_prev = y, f_prev = fy, t_prev = t;
    t = t_new;
    y = o.y_new;
    fy = o.f_new;

    if (opt.zero_guard > 0.0 && y > -opt.zero_guard) {
      // Locate the crossing of -zero_guard on the cubic through the step ends.
      std::vector<double> tt{t_prev, t}, yy{y_prev, y}, dd{f_prev, fy};
      double lo = t_prev, hi = t;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (hermite_at(tt, yy, dd, mid) > -opt.zero_guard) hi = mid; else lo = mid;
      }
      tr.t.push_back(hi);
      tr.y.push_back(hermite_at(tt, yy, dd, hi));
      tr.dy.push_back(fy);
      tr.reason = StopReason::hit_zero;
      break;
    }

    tr.t.push_back(t);
    tr.y.push_back(y);
    tr.dy.push_back(fy);
    if (y < opt.floor) {
      tr.reason = StopReason::below_floor;
      break;
    }
    if (last) {
      tr.reason = StopReason::reached_end;
      break;
    }

    // Next step size and method.
    double h_new;
    if (implicit) {
      h_new = h * std::min(5.0, std::max(0.2, 0.8 * std::pow(std::max(o.err, 1e-12), -1.0 / 3.0)));
    } else {
      const double e = std::max(o.err, 1e-12);
      double fac = std::pow(e, 0.17) / std::pow(err_old, 0.04) / 0.9;
      fac = std::clamp(fac, 0.1, 5.0);
      h_new = h / fac;
      err_old = std::max(e, 1e-4);
    }
    // Only contracting directions (dir * df/dy < 0) count as stiff; growth is
    // resolved by the explicit pair.
    const double hJ = field.df_dy ? -dir * h_new * field.df_dy(t, y) : 0.0;
    if (!implicit) {
      stiff_count = hJ > kStiffEnter ? stiff_count + 1 : std::max(0, stiff_count - 1);
      if (stiff_count >= kSwitchAfter && field.df_dy) {
        implicit = true;
        stiff_count = 0;
        calm_count = 0;
      }
    } else {
      calm_count = hJ < kStiffLeave ? calm_count + 1 : 0;
      if (calm_count >= kSwitchAfter) {
        implicit = false;
        calm_count = 0;
        err_old = 1e-4;
      }
    }
    h = std::max(h_new, min_step_at(t));
  }
  tr.t_stop = tr.t.back();
  return tr;
}

}  // namespace twf
