#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twf/polynomial.hpp"

namespace twf {

/// User-facing description of a model: flux f, diffusivity D and reaction g
/// on [0,1], given as coefficient vectors (constant term first) or replaced
/// wholesale by a named closed-form preset.
struct ModelSpec {
  std::vector<double> f_poly;
  std::vector<double> D_poly;
  std::vector<double> g_poly;
  std::optional<std::string> special;
  std::string name = "custom";
};

/// Validated, immutable model handle.
///
/// Exposes f, D, g together with h = f' and q = D g. Polynomial models carry
/// exact coefficient derivatives. Closed-form presets may define only the
/// pair (h, q); in that case has_flux() and has_split() are false and every
/// f- or D-dependent quantity is unavailable.
class Model {
 public:
  using Fn = std::function<double(double)>;

  /// Pieces of a closed-form (non-polynomial) model.
  struct ClosedForm {
    Fn h;
    Fn q;
    Fn q_over_phi;
    std::optional<double> q_dot_zero;
    std::optional<double> q_dot_one;
    std::string q_dot_zero_note;
    std::string q_dot_one_note;
    /// Whether q(s)/s^2 is integrable at 0, as known for this closed form.
    bool integrable_at_zero = false;
  };

  static Model from_polynomials(std::string name, Polynomial f, Polynomial D, Polynomial g);
  static Model from_closed_form(std::string name, ClosedForm form);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] bool is_polynomial() const noexcept { return f_poly_.has_value(); }
  [[nodiscard]] bool has_flux() const noexcept { return f_poly_.has_value(); }
  [[nodiscard]] bool has_split() const noexcept { return D_poly_.has_value(); }

  [[nodiscard]] double f(double phi) const;
  [[nodiscard]] double D(double phi) const;
  [[nodiscard]] double D_dot(double phi) const;
  [[nodiscard]] double g(double phi) const;
  [[nodiscard]] double h(double phi) const { return h_(phi); }
  [[nodiscard]] double h_dot(double phi) const { return h_dot_(phi); }
  [[nodiscard]] double q(double phi) const { return q_(phi); }
  [[nodiscard]] double q_dot(double phi) const { return q_dot_(phi); }
  /// q(phi)/phi, continuous at 0 when the limit exists.
  [[nodiscard]] double q_over_phi(double phi) const { return q_over_phi_(phi); }

  /// One-sided derivatives of q at the endpoints; empty when they do not exist.
  [[nodiscard]] std::optional<double> q_dot_at_zero() const noexcept { return q_dot_zero_; }
  [[nodiscard]] std::optional<double> q_dot_at_one() const noexcept { return q_dot_one_; }
  [[nodiscard]] const std::string& q_dot_zero_note() const noexcept { return q_dot_zero_note_; }
  [[nodiscard]] const std::string& q_dot_one_note() const noexcept { return q_dot_one_note_; }

  /// Closed-form models only: known integrability of q/s^2 at 0.
  [[nodiscard]] bool stated_integrable_at_zero() const noexcept { return integrable_at_zero_; }

  [[nodiscard]] const std::optional<Polynomial>& f_poly() const noexcept { return f_poly_; }
  [[nodiscard]] const std::optional<Polynomial>& D_poly() const noexcept { return D_poly_; }
  [[nodiscard]] const std::optional<Polynomial>& g_poly() const noexcept { return g_poly_; }
  [[nodiscard]] const std::optional<Polynomial>& q_poly() const noexcept { return q_poly_; }

 private:
  Model() = default;

  std::string name_;
  std::optional<Polynomial> f_poly_, D_poly_, g_poly_, q_poly_;
  Fn h_, h_dot_, q_, q_dot_, q_over_phi_;
  std::optional<double> q_dot_zero_, q_dot_one_;
  std::string q_dot_zero_note_, q_dot_one_note_;
  bool integrable_at_zero_ = false;
};

/// Builds a model handle from a spec, resolving preset tags through the
/// registry. Throws ModelError on an empty spec or an unknown preset.
[[nodiscard]] Model build_model(const ModelSpec& spec);

}  // namespace twf
