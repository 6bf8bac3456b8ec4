#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twf/integrator.hpp"
#include "twf/model.hpp"

namespace twf {

/// A sampled solution of dz/dphi = h(phi) - c - q(phi)/z, z < 0 inside (0,1).
///
/// Samples are stored in increasing phi regardless of the direction of the
/// run. zdot holds dz/dphi at each sample (the right-hand side, or a secant
/// estimate where that is unreliable), so the cubic Hermite
/// interpolant through (phi, z, zdot) is available between samples.
struct ShootingResult {
  enum class Direction { backward, forward };

  double c = 0.0;
  Direction direction = Direction::backward;
  /// Boundary value imposed at phi = 1 (backward runs).
  double b = 0.0;
  std::vector<double> phi, z, zdot;
  StopReason terminal = StopReason::reached_end;
  /// Where the run stopped.
  double terminal_phi = 0.0;
  /// Distance from the corner where a desingularized start was placed; 0 for exact starts.
  double start_shift = 0.0;

  /// z(eps0)/eps0, or its continuation toward phi -> 0 when q'(0) > 0.
  std::optional<double> slope_at_zero_estimate;
  /// Plain quotient z(eps0)/eps0 at the last sample.
  std::optional<double> slope_at_zero_raw;
  /// Extrapolated secant slope z(1 - psi)/(-psi) as psi -> 0 (runs with z(1) = 0).
  std::optional<double> slope_at_one_estimate;
  /// One frozen-field step from the last sample to phi = 0.
  std::optional<double> zeta_zero;

  [[nodiscard]] bool succeeded() const noexcept { return terminal == StopReason::reached_end; }
  [[nodiscard]] double phi_min() const { return phi.front(); }
  [[nodiscard]] double phi_max() const { return phi.back(); }
  /// Hermite interpolation inside [phi_min, phi_max].
  [[nodiscard]] double z_at(double x) const;
  /// dz/dphi from the Hermite interpolant.
  [[nodiscard]] double zdot_at(double x) const;
};

/// Slope of the z(1) = 0 solution at phi = 1. Needs q'(1) <= 0.
[[nodiscard]] double r_plus(const Model& model, double c);

/// Candidate slopes (s_minus, s_plus) at phi = 0. Needs q'(0) and a
/// non-negative discriminant with both roots <= 0; otherwise throws
/// BelowAdmissibleRange.
[[nodiscard]] std::pair<double, double> s_pm(const Model& model, double c);

/// Smallest speed for which s_pm is defined: h(0) + 2 sqrt(q'(0)).
[[nodiscard]] double s_pm_threshold(const Model& model);

/// The right-hand side as a scalar field in phi.
[[nodiscard]] ScalarField reduced_field(const Model& model, double c);

/// Integrates from phi = 1 down to phi = eps0. For b < 0 the run starts at
/// (1, b); for b = 0 it starts at (1 - eps0, -r_plus eps0).
[[nodiscard]] ShootingResult integrate_backward_from_one(const Model& model, double c, double b,
                                                         const IntegratorConfig& cfg = {});

enum class Branch { s_minus, s_plus };

/// Integrates from (eps0, s eps0) toward phi = 1, with s the chosen branch
/// slope. A zero slope is refused: the forward problem from (0,0) with zero
/// slope is not locally unique.
[[nodiscard]] ShootingResult integrate_forward_from_zero(const Model& model, double c, Branch branch,
                                                         const IntegratorConfig& cfg = {});

/// Continues w = z/phi in log(phi) from (phi0, z0) toward phi -> 0 and returns
/// the limit of w, or nothing if w runs off to -infinity.
[[nodiscard]] std::optional<double> continue_slope_to_zero(const Model& model, double c, double phi0,
                                                           double z0, const IntegratorConfig& cfg);

enum class SolutionKind { upper, lower };

struct ComparisonVerdict {
  bool strict = false;
  /// Smallest margin of the differential inequality over all midpoints.
  double worst_margin = 0.0;
  std::optional<double> first_violation_phi;
};

/// Checks the differential inequality eta' >= h - c - q/eta (upper) or its
/// reverse (lower) at the midpoints of the sampled candidate. Strict means
/// the margin exceeds tol everywhere.
[[nodiscard]] ComparisonVerdict check_upper_lower(const Model& model, double c,
                                                  const std::vector<double>& phi,
                                                  const std::vector<double>& eta, SolutionKind kind,
                                                  double tol = 1e-9);

}  // namespace twf
