#include "twf/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "twf/errors.hpp"
#include "twf/thresholds.hpp"

namespace twf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Exponents this close to 0 are read as a finite nonzero endpoint slope.
constexpr double kFlatExponent = 5e-2;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};

template <class F>
double gauss(const F& fn, double lo, double hi) {
  if (hi == lo) return 0.0;
  constexpr int kSub = 4;
  const double w = (hi - lo) / kSub;
  double sum = 0.0;
  for (int k = 0; k < kSub; ++k) {
    const double mid = lo + (k + 0.5) * w;
    for (std::size_t i = 0; i < kNodes.size(); ++i)
      sum += kWeights[i] * fn(mid + 0.5 * w * kNodes[i]);
  }
  return 0.5 * w * sum;
}

// Least-squares fit of log(value) against log(s) on [s_min, 10 s_min].
template <class F>
TailFit fit_tail(const F& value_at, double s_min) {
  constexpr int kSamples = 16;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < kSamples; ++k) {
    const double s = s_min * std::pow(10.0, static_cast<double>(k) / (kSamples - 1));
    const double x = std::log(s);
    const double y = std::log(value_at(s));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = kSamples;
  TailFit t;
  t.p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  // anchor at the innermost sample so the tail joins the data continuously
  t.v_min = value_at(s_min);
  t.A = t.v_min / std::pow(s_min, t.p);
  t.s_min = s_min;
  return t;
}

}  // namespace

std::string_view to_string(Regularity r) noexcept {
  switch (r) {
    case Regularity::classical: return "classical";
    case Regularity::sharp: return "sharp";
    case Regularity::indeterminate: return "indeterminate";
  }
  return "?";
}

double TailFit::integral(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  if (std::abs(p + 1.0) < 1e-12) return A * std::log(hi / lo);
  return A * (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / (p + 1.0);
}

EndpointSlope TailFit::slope_limit() const {
  if (p < -kFlatExponent) return EndpointSlope::finite(0.0);
  if (p > kFlatExponent) return EndpointSlope::minus_infinity();
  // nearly flat: the innermost value is a better limit than the extrapolated A
  return EndpointSlope::finite(-1.0 / v_min);
}

XiMap::XiMap(const Model& model, const ShootingResult& z, double normalization)
    : model_(&model), z_(&z), norm_(normalization) {
  if (!model.has_split())
    throw Refusal("the profile needs the diffusivity D and reaction g",
                  "the profile is recovered from z through the diffusivity");
  if (!z.succeeded() || z.phi.size() < 2)
    throw Refusal("no admissible z to build a profile from (run stopped: " +
                      std::string(to_string(z.terminal)) + ")",
                  "profiles correspond to negative solutions of the reduced problem");
  if (!(normalization > z.phi_min() && normalization < z.phi_max()))
    throw ModelError("normalization level must lie inside the sampled range");

  const auto f = [&](double s) { return model.D(s) / -z.z_at(s); };
  cum_.assign(z.phi.size(), 0.0);
  for (std::size_t i = 1; i < z.phi.size(); ++i)
    cum_[i] = cum_[i - 1] + gauss(f, z.phi[i - 1], z.phi[i]);

  tail0_ = fit_tail(f, z.phi_min());
  const double s1 = 1.0 - z.phi_max();
  if (s1 > 0.0) {
    tail1_ = fit_tail([&](double s) { return f(1.0 - s); }, s1);
  } else {
    // run started exactly at phi = 1 with z(1) < 0: nothing beyond the samples
    tail1_.A = tail1_.v_min = f(1.0);
    tail1_.p = 0.0;
    tail1_.s_min = 0.0;
  }
}

double XiMap::cumulative(double phi) const {
  const auto& x = z_->phi;
  auto it = std::upper_bound(x.begin(), x.end(), phi);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (i + 1 >= x.size()) i = x.size() - 2;
  const auto f = [&](double s) { return model_->D(s) / -z_->z_at(s); };
  return cum_[i] + gauss(f, x[i], phi);
}

double XiMap::operator()(double phi) const {
  const double lo = z_->phi_min(), hi = z_->phi_max();
  const double base = cumulative(norm_);
  if (phi < lo) return base + tail0_.integral(phi, lo);
  if (phi > hi) return base - cum_.back() - tail1_.integral(1.0 - phi, 1.0 - hi);
  return base - cumulative(phi);
}

double XiMap::integrand(double phi) const {
  if (phi < z_->phi_min()) return tail0_.A * std::pow(phi, tail0_.p);
  if (phi > z_->phi_max()) return tail1_.A * std::pow(1.0 - phi, tail1_.p);
  return model_->D(phi) / -z_->z_at(phi);
}

double XiMap::z(double phi) const {
  if (phi >= z_->phi_min() && phi <= z_->phi_max()) return z_->z_at(phi);
  return -model_->D(phi) / integrand(phi);
}

double XiMap::xi0() const {
  if (!tail0_.convergent()) return kInf;
  return cumulative(norm_) + tail0_.integral(0.0, z_->phi_min());
}

double XiMap::a() const {
  if (tail1_.s_min == 0.0) return cumulative(norm_) - cum_.back();
  if (!tail1_.convergent()) return -kInf;
  return cumulative(norm_) - cum_.back() - tail1_.integral(0.0, tail1_.s_min);
}

double xi_of_phi(const Model& model, const ShootingResult& z, double phi, double normalization) {
  return XiMap(model, z, normalization)(phi);
}

EndpointSlope slope_at_one(const Model& model, double c, double z1) {
  const double D1 = model.D(1.0);
  if (z1 < 0.0) {
    if (D1 == 0.0) return EndpointSlope::minus_infinity();
    return EndpointSlope::finite(z1 / D1);
  }
  if (D1 > 0.0) return EndpointSlope::finite(0.0);
  const double g1 = model.g(1.0);
  const double a = model.h(1.0) - c;
  const double Dd = model.D_dot(1.0);
  if (Dd < 0.0) {
    // limit of z/D with z ~ r (phi - 1), r the positive root of r^2 - a r + D'(1) g(1) = 0
    const double den = a - std::sqrt(a * a - 4.0 * Dd * g1);
    if (den == 0.0) return g1 == 0.0 ? EndpointSlope::unknown() : EndpointSlope::minus_infinity();
    return EndpointSlope::finite(2.0 * g1 / den);
  }
  if (g1 == 0.0) return EndpointSlope::unknown();
  if (a < 0.0) return EndpointSlope::finite(g1 / a);
  return EndpointSlope::minus_infinity();
}

ZeroClassification classify_at_zero(const Model& model, double c, double c_star, double z1,
                                     std::optional<double> beta_hat, double c_tol) {
  const auto qd0 = model.q_dot_at_zero();
  if (!qd0)
    throw Refusal("q has no derivative at 0; the classification at 0 is not available",
                  "the classification at 0 uses the slope of q at 0");
  ZeroClassification out;
  const double D0 = model.D(0.0);
  if (D0 > 0.0) {
    out.kind = Regularity::classical;
    out.slope = EndpointSlope::finite(0.0);
    out.xi0_finite = false;
    out.basis = "D(0) > 0: the profile approaches 0 without reaching it";
    return out;
  }
  const double h0 = model.h(0.0);
  const double Dd0 = model.D_dot(0.0);
  const auto sharp_slope = [&](double zdot0) {
    return Dd0 > 0.0 ? EndpointSlope::finite(zdot0 / Dd0) : EndpointSlope::minus_infinity();
  };
  if (*qd0 > 0.0) {
    // both admissible slopes of z at 0 are negative
    out.kind = Regularity::sharp;
    out.slope = Dd0 > 0.0 ? EndpointSlope::unknown() : EndpointSlope::minus_infinity();
    out.xi0_finite = true;
    out.basis = "D(0) = 0 and q'(0) > 0: z leaves 0 with a nonzero slope";
    return out;
  }
  const bool at_critical = std::abs(c - c_star) <= c_tol;
  if (at_critical) {
    if (c_star > h0 + c_tol) {
      out.kind = Regularity::sharp;
      out.slope = sharp_slope(h0 - c);
      out.xi0_finite = true;
      out.basis = "critical speed above h(0): z'(0) = h(0) - c";
    } else {
      out.kind = Regularity::indeterminate;
      out.confidence = "resolved-numerically";
      out.basis = "critical speed equal to h(0): no rule applies";
    }
    return out;
  }
  if (!beta_hat)
    throw Refusal("the classification at 0 above the critical speed needs the threshold beta_hat",
                  "above the critical speed the type at 0 depends on z(1) against beta_hat");
  if (z1 <= *beta_hat) {
    out.kind = Regularity::sharp;
    out.slope = sharp_slope(h0 - c);
    out.xi0_finite = true;
    out.basis = "z(1) <= beta_hat: z'(0) = h(0) - c";
    return out;
  }
  out.kind = Regularity::classical;
  out.slope = EndpointSlope::finite(0.0);
  const double g_slope = model.g_poly() ? model.g_poly()->derivative()(0.0) : model.g(1e-8) / 1e-8;
  if (c > h0 + g_slope) {
    out.xi0_finite = false;
    out.basis = "z(1) > beta_hat and c > h(0) + g'(0): 0 is not reached";
  } else {
    out.basis = "z(1) > beta_hat: classical, reach of 0 decided by quadrature";
  }
  return out;
}

double FrontProfile::phi_at(double x) const {
  if (xi.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (x <= xi.front()) return phi.front();
  if (x >= xi.back()) return phi.back();
  const auto it = std::upper_bound(xi.begin(), xi.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xi.begin()) - 1;
  const double h = xi[i + 1] - xi[i];
  const double t = (x - xi[i]) / h;
  if (!std::isfinite(dphi[i]) || !std::isfinite(dphi[i + 1]))
    return phi[i] + t * (phi[i + 1] - phi[i]);
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * phi[i] + h10 * h * dphi[i] + h01 * phi[i + 1] + h11 * h * dphi[i + 1];
}

FrontProfile build_profile(const Model& model, const ShootingResult& z, const ProfileConfig& cfg,
                           const std::optional<ClassificationContext>& ctx) {
  if (model.q_dot_at_zero() && z.succeeded() &&
      classify_slope(model, z.c, z) == SlopeClass::failed)
    throw Refusal("z does not vanish at 0 for this boundary value, so there is no front",
                  "fronts correspond to solutions with z(0) = 0");
  const XiMap map(model, z, cfg.normalization);
  FrontProfile out;
  out.c = z.c;
  out.b = z.phi_max() == 1.0 ? z.z.back() : 0.0;
  out.normalization = cfg.normalization;
  out.a = map.a();
  out.xi0 = map.xi0();

  // mesh in phi, refined logarithmically toward both ends
  std::vector<double> mesh;
  const int decades = static_cast<int>(std::lround(-std::log10(cfg.innermost))) - 1;
  const int n_log = decades * cfg.nodes_per_decade;
  for (int k = 0; k <= n_log; ++k) {
    const double s = cfg.innermost * std::pow(10.0, static_cast<double>(k) / cfg.nodes_per_decade);
    mesh.push_back(s);
    mesh.push_back(1.0 - s);
  }
  for (int k = 1; k < cfg.interior_nodes; ++k)
    mesh.push_back(0.1 + 0.8 * k / cfg.interior_nodes);
  std::sort(mesh.begin(), mesh.end(), std::greater<>());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

  // numeric endpoint slopes from the tail fits
  const EndpointSlope num0 = map.tail_zero().slope_limit();
  const EndpointSlope num1 = z.phi_max() == 1.0 ? slope_at_one(model, z.c, z.z.back())
                                                : map.tail_one().slope_limit();

  // at phi = 1
  out.slope_at_a = slope_at_one(model, z.c, z.phi_max() == 1.0 ? z.z.back() : 0.0);
  out.confidence_one = "rule";
  if (out.slope_at_a.kind == EndpointSlope::Kind::indeterminate) {
    out.slope_at_a = num1;
    out.confidence_one = "resolved-numerically";
  }
  if (!std::isfinite(out.a)) {
    out.kind_at_one = Regularity::classical;
    out.basis_one = "1 is approached but not reached";
  } else if (out.slope_at_a.is_zero()) {
    out.kind_at_one = Regularity::classical;
    out.basis_one = "1 is reached with zero slope";
  } else {
    out.kind_at_one = Regularity::sharp;
    out.basis_one = "1 is reached with nonzero slope";
  }

  // at phi = 0
  if (ctx) {
    const double z1 = z.phi_max() == 1.0 ? z.z.back() : 0.0;
    const auto rule = classify_at_zero(model, z.c, ctx->c_star, z1, ctx->beta_hat);
    out.kind_at_zero = rule.kind;
    out.slope_at_xi0 = rule.slope;
    out.confidence_zero = rule.confidence;
    out.basis_zero = rule.basis;
    if (rule.xi0_finite && rule.kind != Regularity::indeterminate)
      out.rule_matches_quadrature = *rule.xi0_finite == std::isfinite(out.xi0);
  } else {
    out.confidence_zero = "resolved-numerically";
    out.basis_zero = "no critical speed supplied";
  }
  if (out.slope_at_xi0.kind == EndpointSlope::Kind::indeterminate) {
    if (out.kind_at_zero == Regularity::sharp && z.slope_at_zero_estimate &&
        model.D_dot(0.0) > 0.0)
      out.slope_at_xi0 = EndpointSlope::finite(*z.slope_at_zero_estimate / model.D_dot(0.0));
    else
      out.slope_at_xi0 = num0;
  }
  if (out.kind_at_zero == Regularity::indeterminate) {
    out.kind_at_zero = std::isfinite(out.xi0) && !out.slope_at_xi0.is_zero() ? Regularity::sharp
                                                                             : Regularity::classical;
    out.confidence_zero = "resolved-numerically";
  }

  const auto slope_value = [](const EndpointSlope& s) {
    return s.kind == EndpointSlope::Kind::finite ? s.value : -kInf;
  };
  if (std::isfinite(out.a)) {
    out.xi.push_back(out.a);
    out.phi.push_back(1.0);
    out.dphi.push_back(slope_value(out.slope_at_a));
  }
  for (const double p : mesh) {
    const double x = map(p);
    if (!std::isfinite(x) || (!out.xi.empty() && x <= out.xi.back())) continue;
    out.xi.push_back(x);
    out.phi.push_back(p);
    out.dphi.push_back(map.z(p) / model.D(p));
  }
  if (std::isfinite(out.xi0) && out.xi0 > out.xi.back()) {
    out.xi.push_back(out.xi0);
    out.phi.push_back(0.0);
    out.dphi.push_back(slope_value(out.slope_at_xi0));
  }
  return out;
}

}  // namespace twf
