#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twf/model.hpp"
#include "twf/singular_ode.hpp"

namespace twf {

enum class Regularity { classical, sharp, indeterminate };
[[nodiscard]] std::string_view to_string(Regularity r) noexcept;

/// Limit of phi' at an endpoint: a finite value, -infinity, or undetermined.
struct EndpointSlope {
  enum class Kind { finite, minus_infinity, indeterminate };
  Kind kind = Kind::indeterminate;
  double value = 0.0;

  static EndpointSlope finite(double v) { return {Kind::finite, v}; }
  static EndpointSlope minus_infinity() { return {Kind::minus_infinity, 0.0}; }
  static EndpointSlope unknown() { return {Kind::indeterminate, 0.0}; }
  [[nodiscard]] bool is_zero() const noexcept { return kind == Kind::finite && value == 0.0; }
};

/// Power law D/(-z) ~ A s^p fitted on the last decade next to an endpoint,
/// with s the distance to that endpoint.
struct TailFit {
  double A = 0.0;
  double p = 0.0;
  double s_min = 0.0;  // innermost sampled distance
  double v_min = 0.0;  // integrand there
  /// The improper integral converges: p > -1 + 1e-2.
  [[nodiscard]] bool convergent() const noexcept { return p > -1.0 + 1e-2; }
  /// Integral of A s^p over [lo, hi].
  [[nodiscard]] double integral(double lo, double hi) const;
  /// Limit of phi' = -1/(A s^p) as s -> 0.
  [[nodiscard]] EndpointSlope slope_limit() const;
};

/// xi(phi) = int_phi^{norm} D/(-z) ds for a sampled z, with power-law tails
/// below and above the sampled range.
class XiMap {
 public:
  XiMap(const Model& model, const ShootingResult& z, double normalization = 0.5);

  [[nodiscard]] double operator()(double phi) const;
  /// D(phi)/(-z(phi)), using the tail models outside the sampled range.
  [[nodiscard]] double integrand(double phi) const;
  /// z at phi, extended by the tail models.
  [[nodiscard]] double z(double phi) const;
  /// Signed endpoints; +-infinity when the tail integral diverges.
  [[nodiscard]] double xi0() const;
  [[nodiscard]] double a() const;
  [[nodiscard]] const TailFit& tail_zero() const noexcept { return tail0_; }
  [[nodiscard]] const TailFit& tail_one() const noexcept { return tail1_; }
  [[nodiscard]] double normalization() const noexcept { return norm_; }

 private:
  [[nodiscard]] double cumulative(double phi) const;  // int_{phi_min}^{phi}, inside the range

  const Model* model_;
  const ShootingResult* z_;
  double norm_;
  std::vector<double> cum_;  // cumulative integral at z_->phi nodes
  TailFit tail0_, tail1_;
};

/// Scalar version of XiMap for one target.
[[nodiscard]] double xi_of_phi(const Model& model, const ShootingResult& z, double phi,
                               double normalization = 0.5);

/// Classification at 0 with the quantities it was derived from.
struct ZeroClassification {
  Regularity kind = Regularity::indeterminate;
  EndpointSlope slope;
  /// What the rule says about xi0 being finite; empty when it says nothing.
  std::optional<bool> xi0_finite;
  /// "rule" or "resolved-numerically".
  std::string confidence = "rule";
  std::string basis;
};

/// Limit of phi' at a, from z(1), D, g and h at 1.
[[nodiscard]] EndpointSlope slope_at_one(const Model& model, double c, double z1);

/// Classification at 0 from c, c*, z(1) and beta_hat. Cases the rule leaves
/// open return Regularity::indeterminate; the caller resolves them from the
/// sampled profile.
[[nodiscard]] ZeroClassification classify_at_zero(const Model& model, double c, double c_star,
                                                  double z1, std::optional<double> beta_hat,
                                                  double c_tol = 1e-6);

struct ProfileConfig {
  double normalization = 0.5;
  int nodes_per_decade = 512;
  int interior_nodes = 512;
  double innermost = 1e-8;
};

/// Inputs to the classification at 0 beyond the shot itself.
struct ClassificationContext {
  double c_star;
  std::optional<double> beta_hat;
};

struct FrontProfile {
  double c = 0.0;
  double b = 0.0;
  double normalization = 0.5;
  std::vector<double> xi, phi, dphi;  // increasing xi
  double a = 0.0;    // -infinity when not reached
  double xi0 = 0.0;  // +infinity when not reached
  EndpointSlope slope_at_a, slope_at_xi0;
  Regularity kind_at_zero = Regularity::indeterminate;
  Regularity kind_at_one = Regularity::indeterminate;
  std::string confidence_zero, confidence_one;
  std::string basis_zero, basis_one;
  /// When the rule at 0 was determinate and claimed something about xi0,
  /// whether the quadrature agreed.
  std::optional<bool> rule_matches_quadrature;

  /// Profile value with constant extension beyond finite endpoints.
  [[nodiscard]] double phi_at(double x) const;
};

[[nodiscard]] FrontProfile build_profile(const Model& model, const ShootingResult& z,
                                         const ProfileConfig& cfg = {},
                                         const std::optional<ClassificationContext>& ctx = {});

}  // namespace twf
