#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "twf/model.hpp"

namespace twf {

enum class Verdict { holds, fails, not_applicable };
enum class Scenario { semi_wavefront, wavefront, q_only };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;
[[nodiscard]] std::string_view to_string(Scenario s) noexcept;

/// Verdicts for the standing hypotheses on (f, D, g) and q = D g.
struct AssumptionReport {
  Verdict flux = Verdict::not_applicable;          // f(0) = 0
  Verdict D_zero = Verdict::not_applicable;        // D > 0 inside, D(0) = 0
  Verdict D_one = Verdict::not_applicable;         // D > 0 inside, D(1) = 0
  Verdict g_zero = Verdict::not_applicable;        // g > 0 on (0,1], g(0) = 0
  Verdict g_zero_one = Verdict::not_applicable;    // g > 0 inside, g(0) = g(1) = 0
  Verdict q_positive = Verdict::fails;             // q(0) = q(1) = 0, q > 0 inside
  Verdict q_linear_bound = Verdict::fails;         // limsup q/phi < infinity at 0
  Verdict q_integrable = Verdict::fails;           // integral of q/s^2 near 0 finite
  std::optional<double> q_dot_zero;
  std::optional<double> q_dot_one;
  std::string q_dot_zero_note;
  std::string q_dot_one_note;
  Scenario scenario = Scenario::q_only;
  bool stated = false;  // verdicts copied from the closed form rather than derived

  [[nodiscard]] bool front_scenario() const noexcept { return scenario != Scenario::q_only; }
  [[nodiscard]] bool derivatives_exist() const noexcept {
    return q_dot_zero.has_value() && q_dot_one.has_value();
  }
};

[[nodiscard]] AssumptionReport validate_assumptions(const Model& model);

/// sup over (0,1] of fn, where limit_at_zero is the value of fn as phi -> 0+.
/// Grid scan at spacing 1e-3, then golden-section refinement of the best cell.
[[nodiscard]] double sup_on_unit(const std::function<double(double)>& fn, double limit_at_zero);

/// Minimum of fn over the open interval, by the same grid-plus-refinement scheme.
[[nodiscard]] double min_on_open(const std::function<double(double)>& fn);

/// Polynomial positivity on (0,1): exact sign of the first nonzero coefficient
/// at each end, grid scan with refinement inside.
[[nodiscard]] bool positive_on_open(const Polynomial& p);

}  // namespace twf
