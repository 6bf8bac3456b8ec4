#include "twf/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twf/errors.hpp"
#include "twf/presets.hpp"

namespace twf {

namespace {

// Central difference clipped to [0,1]; one-sided at the ends.
double numeric_derivative(const Model::Fn& fn, double x) {
  constexpr double step = 1e-6;
  const double lo = std::max(0.0, x - step);
  const double hi = std::min(1.0, x + step);
  return (fn(hi) - fn(lo)) / (hi - lo);
}

}  // namespace

Model Model::from_polynomials(std::string name, Polynomial f, Polynomial D, Polynomial g) {
  Model m;
  m.name_ = std::move(name);
  Polynomial q = D * g;
  Polynomial h = f.derivative();
  Polynomial h_dot = h.derivative();
  Polynomial q_dot = q.derivative();

  m.h_ = [h](double x) { return h(x); };
  m.h_dot_ = [h_dot](double x) { return h_dot(x); };
  m.q_ = [q](double x) { return q(x); };
  m.q_dot_ = [q_dot](double x) { return q_dot(x); };
  if (q.coefficient(0) == 0.0) {
    Polynomial qx = q.divided_by_x();
    m.q_over_phi_ = [qx](double x) { return qx(x); };
  } else {
    m.q_over_phi_ = [q](double x) {
      return x > 0.0 ? q(x) / x : std::numeric_limits<double>::infinity();
    };
  }
  // Polynomials are smooth, so both one-sided derivatives always exist.
  m.q_dot_zero_ = q_dot(0.0);
  m.q_dot_one_ = q_dot(1.0);

  m.f_poly_ = std::move(f);
  m.D_poly_ = std::move(D);
  m.g_poly_ = std::move(g);
  m.q_poly_ = std::move(q);
  return m;
}

Model Model::from_closed_form(std::string name, ClosedForm form) {
  Model m;
  m.name_ = std::move(name);
  m.h_ = form.h;
  m.q_ = form.q;
  m.q_over_phi_ = form.q_over_phi;
  m.h_dot_ = [h = form.h](double x) { return numeric_derivative(h, x); };
  m.q_dot_ = [q = form.q](double x) { return numeric_derivative(q, x); };
  m.q_dot_zero_ = form.q_dot_zero;
  m.q_dot_one_ = form.q_dot_one;
  m.q_dot_zero_note_ = std::move(form.q_dot_zero_note);
  m.q_dot_one_note_ = std::move(form.q_dot_one_note);
  m.integrable_at_zero_ = form.integrable_at_zero;
  return m;
}

double Model::f(double phi) const {
  if (!f_poly_) throw Refusal("flux f is not defined for model '" + name_ + "'",
                              "closed-form model given by h and q only");
  return (*f_poly_)(phi);
}

double Model::D(double phi) const {
  if (!D_poly_) throw Refusal("diffusivity D is not defined for model '" + name_ + "'",
                              "closed-form model given by h and q only");
  return (*D_poly_)(phi);
}

double Model::D_dot(double phi) const {
  if (!D_poly_) throw Refusal("diffusivity D is not defined for model '" + name_ + "'",
                              "closed-form model given by h and q only");
  return D_poly_->derivative()(phi);
}

double Model::g(double phi) const {
  if (!g_poly_) throw Refusal("reaction g is not defined for model '" + name_ + "'",
                              "closed-form model given by h and q only");
  return (*g_poly_)(phi);
}

Model build_model(const ModelSpec& spec) {
  if (spec.special) {
    const Preset* p = find_preset(*spec.special);
    if (!p) throw ModelError("unknown preset '" + *spec.special + "'");
    return p->build();
  }
  if (spec.f_poly.empty() && spec.D_poly.empty() && spec.g_poly.empty())
    throw ModelError("empty model specification");
  if (spec.D_poly.empty() || spec.g_poly.empty())
    throw ModelError("model specification needs both D and g");
  return Model::from_polynomials(spec.name, Polynomial(spec.f_poly), Polynomial(spec.D_poly),
                                 Polynomial(spec.g_poly));
}

}  // namespace twf
