#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twf/integrator.hpp"
#include "twf/model.hpp"
#include "twf/profile.hpp"
#include "twf/thresholds.hpp"

namespace twf {

// ---- analytic facts -------------------------------------------------------

enum class FactKind { exact_z, exact_c_star, exact_profile, exact_slope, nonexistence };
[[nodiscard]] std::string_view to_string(FactKind k) noexcept;

enum class SlopeSite { z_at_one, profile_at_xi0 };

struct AnalyticFact {
  std::string preset;
  FactKind kind;
  std::string description;
  std::string citation;
  /// Scalar target for c* and slope facts.
  double value = 0.0;
  SlopeSite slope_site = SlopeSite::z_at_one;
  /// For nonexistence facts: which endpoint derivative of q is missing (0 or 1).
  int endpoint = 0;
};

/// The registry of facts derived from the presets.
[[nodiscard]] const std::vector<AnalyticFact>& analytic_facts();

/// Residual of the fact's defining relation on 10^3 points, computed from the
/// closed forms alone. Exact z: z z' - (h - c) z + q. Profile: D(phi) phi' - z(phi).
/// Slope: difference from the derivative of the closed form. c*: gap between
/// coinciding bounds. Nonexistence: negative of the oscillation amplitude of
/// the quotient that fails to converge (so a pass is a negative number).
[[nodiscard]] double fact_residual(const AnalyticFact& fact);

struct FactCheck {
  const AnalyticFact* fact = nullptr;
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Comparisons against computed artifacts. Throw ModelError on a kind or
/// domain mismatch.
[[nodiscard]] FactCheck verify_fact(const AnalyticFact& fact, const ShootingResult& shot);
[[nodiscard]] FactCheck verify_fact(const AnalyticFact& fact, const CriticalSpeedResult& result);
[[nodiscard]] FactCheck verify_fact(const AnalyticFact& fact, const FrontProfile& profile);

/// Computes whatever artifact the fact needs and verifies it. Nonexistence
/// facts pass iff the corresponding call is refused.
[[nodiscard]] FactCheck run_fact(const AnalyticFact& fact, const IntegratorConfig& cfg = {});

[[nodiscard]] std::vector<FactCheck> analytic_suite(const IntegratorConfig& cfg = {});

// ---- reference solver -----------------------------------------------------

enum class Quantity { c_star, beta, beta_hat };
[[nodiscard]] std::string_view to_string(Quantity q) noexcept;

struct ReferenceResult {
  Quantity quantity = Quantity::c_star;
  std::optional<double> c;
  /// Empty when the runs disagree.
  std::optional<double> value;
  std::vector<double> eps0;
  std::vector<double> runs;
  double spread = 0.0;
  std::string note;
  [[nodiscard]] bool stable() const noexcept { return value.has_value(); }
};

/// Runs the threshold algorithms at rel_tol 1e-13 for eps0 in {1e-6, 1e-7,
/// 1e-8}. The value (from the smallest eps0) is returned only when all runs
/// agree within 10 c_tol.
[[nodiscard]] ReferenceResult reference_bisection(const Model& model, Quantity quantity,
                                                  std::optional<double> c = {},
                                                  const ThresholdConfig& tcfg = {});

/// Hash of the configuration fields that influence a computed value.
[[nodiscard]] std::string config_hash(const IntegratorConfig& cfg, const ThresholdConfig& tcfg);

// ---- regression baselines -------------------------------------------------

struct BaselineEntry {
  std::string id;  // preset name
  Quantity quantity = Quantity::c_star;
  std::optional<double> c;
  double value = 0.0;
  std::string cfg_hash;
  std::string provenance;
};

/// The (preset, quantity, c) triples covered by the regression suite.
struct BaselineTarget {
  std::string id;
  Quantity quantity;
  std::optional<double> c;
};
[[nodiscard]] const std::vector<BaselineTarget>& baseline_targets();

/// Mints entries with reference_bisection. Unstable targets are skipped and
/// listed in `unstable`.
[[nodiscard]] std::vector<BaselineEntry> mint_baselines(std::vector<std::string>* unstable = nullptr);

struct RegressionCheck {
  BaselineEntry entry;
  double computed = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;
};

/// Recomputes each entry with the production configuration and compares
/// within 10 c_tol (c*) or 10 b_tol (beta, beta_hat).
[[nodiscard]] std::vector<RegressionCheck> regression_suite(const std::vector<BaselineEntry>& baseline,
                                                            const IntegratorConfig& cfg = {},
                                                            const ThresholdConfig& tcfg = {});

// ---- random corpus and property suite -----------------------------------

struct CorpusMember {
  std::string id;
  ModelSpec spec;
  Scenario scenario = Scenario::q_only;
};

/// Random polynomial models with coefficients in [-2, 2] and degree <= 4,
/// alternating wavefront (D = phi P, g = phi(1-phi) R, f = phi S) and
/// semi-wavefront (D = (1-phi) P, g = phi R) members. Candidates failing the
/// assumption check are rejected and redrawn.
[[nodiscard]] std::vector<CorpusMember> random_corpus(int size, std::uint64_t seed);

struct Violation {
  std::string member;
  std::string property;
  std::string detail;
};

struct MemberOutcome {
  std::string id;
  Scenario scenario = Scenario::q_only;
  std::optional<double> c_star;
  std::optional<double> beta, beta_hat;
  double b_tol = 0.0;
  bool certified = false;
  std::map<std::string, int> checks;
  std::vector<Violation> violations;
};

struct PropertyReport {
  std::vector<MemberOutcome> members;
  std::map<std::string, int> checks_by_property;
  std::vector<Violation> violations;
  double seconds = 0.0;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Properties checked per member, at c = c* + 1 unless stated:
///  sandwich      c* within the closed-form bounds, 1e-3 slack
///  beta_floor    beta >= f(1) - c
///  order_b       z ordered by z(1)
///  order_c       z ordered by c at fixed z(1), and zeta_c increasing in c
///  barrier       z >= f - c phi for admissible z
///  clamp         zeta_c(0) >= -1 - A_c at c = c* - 1
///  threshold     no admissible b below a failed b
///  beta_equal    |beta - beta_hat| <= 10 b_tol when the equality condition holds
/// Members run on up to `threads` threads (0: hardware concurrency).
[[nodiscard]] PropertyReport property_suite(const std::vector<CorpusMember>& corpus,
                                            const IntegratorConfig& cfg = {}, unsigned threads = 0);

}  // namespace twf
