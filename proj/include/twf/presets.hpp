#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twf/model.hpp"

namespace twf {

/// Closed-form solution z of the reduced problem at speed c with z(1) = b.
struct ExactZ {
  double c;
  double b;
  std::function<double(double)> z;
  std::function<double(double)> zdot;
};

/// Closed-form profile normalized by phi(0) = 1/2. Infinite endpoints are
/// stored as +-infinity.
struct ExactProfile {
  double c;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  double a;
  double xi0;
  double slope_at_xi0;
};

/// Known facts attached to a preset.
struct PresetFacts {
  std::optional<ExactZ> exact_z;
  std::optional<double> c_star;
  /// True when c_star follows from coinciding bounds rather than a closed form.
  bool c_star_from_bounds = false;
  std::optional<ExactProfile> profile;
  bool q_dot_zero_missing = false;
  bool q_dot_one_missing = false;
};

struct Preset {
  std::string name;
  std::string description;
  std::function<Model()> build;
  PresetFacts facts;
  /// Polynomial form, empty for closed-form presets.
  std::optional<ModelSpec> spec;
};

/// The fixed registry of named models.
[[nodiscard]] const std::vector<Preset>& presets();
[[nodiscard]] const Preset* find_preset(const std::string& name);

}  // namespace twf
