#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twf/assumptions.hpp"
#include "twf/integrator.hpp"
#include "twf/model.hpp"
#include "twf/singular_ode.hpp"

namespace twf {

/// Closed-form bounds on the critical speed.
struct SpeedBounds {
  /// sup f(phi)/phi over (0,1]; empty without a flux.
  std::optional<double> lower_conv;
  /// h(0) + 2 sqrt(liminf q/phi at 0+).
  double lower_reac = 0.0;
  double lower = 0.0;
  /// 2 sqrt(sup q/phi) + sup f/phi; empty without a flux.
  std::optional<double> upper_pointwise;
  /// sup f/phi + 2 sqrt(sup (1/phi) int_0^phi q(s)/s ds); only when q'(0) = 0.
  std::optional<double> upper_integral;
};

struct ThresholdConfig {
  double c_tol = 1e-6;
  /// Relative: the b tolerance is b_rel_tol * (1 + |f(1) - c|).
  double b_rel_tol = 1e-6;
  int max_iterations = 80;
};

struct CriticalSpeedResult {
  double c_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  SpeedBounds bounds;
  ShootingResult witness;
};

enum class SlopeClass { s_minus, s_plus, failed };
[[nodiscard]] std::string_view to_string(SlopeClass k) noexcept;

struct BetaSample {
  double b;
  SlopeClass slope_class;
};

struct BetaResult {
  double c = 0.0;
  double floor = 0.0;
  double b_tol = 0.0;
  /// Empty when unknown (at c = c* without the integrability/speed condition).
  std::optional<double> beta;
  std::optional<double> beta_hat;
  bool at_critical_speed = false;
  /// s_minus == s_plus: the branches cannot be told apart, beta_hat = beta.
  bool degenerate = false;
  /// The model meets the condition under which beta = beta_hat is proven.
  bool equality_certified = false;
  std::vector<BetaSample> samples;
  std::string note;
};

[[nodiscard]] SpeedBounds analytic_bounds(const Model& model);

/// Subcritical test for one speed: true when the backward run from (1,0)
/// ends away from 0 at phi = eps0, or when c lies below h(0) + 2 sqrt(q'(0)).
[[nodiscard]] bool is_subcritical(const Model& model, double c, const IntegratorConfig& cfg,
                                  ShootingResult* shot = nullptr);

/// Slope class at 0 of a run: failed when z(eps0) < (s_minus - Delta) eps0
/// with Delta = 1 + |s_minus|, otherwise the nearer of s_minus and s_plus.
[[nodiscard]] SlopeClass classify_slope(const Model& model, double c, const ShootingResult& shot);

/// Bisection for c* between the bounds, widened by 1e-2 (1 + max |bound|).
[[nodiscard]] CriticalSpeedResult critical_speed(const Model& model, const IntegratorConfig& cfg = {},
                                                 const ThresholdConfig& tcfg = {});

/// Both thresholds at speed c, given c*. Refuses c below c* - c_tol.
[[nodiscard]] BetaResult beta_thresholds(const Model& model, double c, double c_star,
                                         const IntegratorConfig& cfg = {},
                                         const ThresholdConfig& tcfg = {});

/// True when q/s^2 is integrable at 0 and c* > h(0).
[[nodiscard]] bool equality_condition(const AssumptionReport& report, const Model& model,
                                      double c_star, double c_tol);

}  // namespace twf
