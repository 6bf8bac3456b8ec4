#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace twf {

/// Tolerances shared by every shot.
struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Collar width at degenerate corners: shots start or stop this far from an endpoint.
  double eps0 = 1e-6;
  double min_step = 1e-13;
  long max_steps = 5'000'000;

  /// Throws ModelError unless all fields are positive and eps0 > min_step.
  void validate() const;
};

/// dy/dt = f(t, y) for scalar y, with partial derivatives used by the
/// linearly implicit steps.
struct ScalarField {
  std::function<double(double, double)> f;
  std::function<double(double, double)> df_dy;
  std::function<double(double, double)> df_dt;
};

enum class StopReason { reached_end, hit_zero, step_underflow, max_steps, below_floor };
[[nodiscard]] std::string_view to_string(StopReason r) noexcept;

/// Accepted steps of one run. Samples are ordered along the direction of
/// integration; dy holds the field value at each sample.
struct Trajectory {
  std::vector<double> t, y, dy;
  StopReason reason = StopReason::reached_end;
  double t_stop = 0.0;
  long steps = 0;
  long rejected = 0;
  long implicit_steps = 0;
  /// Steps accepted at the minimum step size despite a large error estimate.
  long forced = 0;
};

struct IntegrateOptions {
  /// The solution must stay strictly negative; stage values >= 0 are rejected.
  bool negative = true;
  /// When > 0, stop once y > -zero_guard (the solution reached 0).
  double zero_guard = 0.0;
  /// Stop once y < floor (runaway toward -infinity).
  double floor = -1e300;
  /// When > 0, control the absolute error of y at this level instead of the
  /// mixed relative/absolute norm built from the config.
  double absolute_tolerance = 0.0;
  /// Measure min_step relative to |t| (for |t| < 1) instead of absolutely.
  bool relative_min_step = false;
};

/// Adaptive integration from (t0, y0) to t1 (either direction).
///
/// Runs the Dormand-Prince 5(4) pair with PI step control. When the step
/// size becomes limited by stability, i.e. |h df/dy| stays near the explicit
/// stability boundary, it switches to a two-stage L-stable Rosenbrock
/// scheme of order 2 and switches back once |h df/dy| is small again.
[[nodiscard]] Trajectory integrate(const ScalarField& field, double t0, double y0, double t1,
                                   const IntegratorConfig& cfg, const IntegrateOptions& opt = {});

/// Cubic Hermite interpolation of a trajectory at t (t within the sampled range).
[[nodiscard]] double hermite_at(const std::vector<double>& t, const std::vector<double>& y,
                                const std::vector<double>& dy, double at);

}  // namespace twf
