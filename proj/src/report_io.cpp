#include "twf/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "twf/errors.hpp"

namespace twf {

namespace {

std::vector<double> coefficients(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_array()) throw ModelError(std::string("model field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ModelError(std::string("model field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write '" + path + "'");
  return out;
}

}  // namespace

ModelSpec parse_model_spec(const Json& j) {
  if (!j.is_object()) throw ModelError("model file must hold a JSON object");
  ModelSpec spec;
  if (j.contains("preset")) {
    spec.special = j["preset"].get<std::string>();
    spec.name = *spec.special;
    return spec;
  }
  spec.name = j.value("name", std::string("custom"));
  spec.f_poly = coefficients(j, "f");
  spec.D_poly = coefficients(j, "D");
  spec.g_poly = coefficients(j, "g");
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model file '" + path + "'");
  try {
    return parse_model_spec(Json::parse(in));
  } catch (const Json::exception& e) {
    throw ModelError("malformed model file '" + path + "': " + e.what());
  }
}

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const AssumptionReport& r) {
  const auto v = [](Verdict x) { return std::string(to_string(x)); };
  Json j;
  j["scenario"] = to_string(r.scenario);
  j["verdicts"] = {
      {"flux_vanishes_at_0", v(r.flux)},       {"D_vanishes_at_0", v(r.D_zero)},
      {"D_vanishes_at_1", v(r.D_one)},         {"g_vanishes_at_0", v(r.g_zero)},
      {"g_vanishes_at_0_and_1", v(r.g_zero_one)}, {"q_positive", v(r.q_positive)},
      {"q_linear_bound_at_0", v(r.q_linear_bound)}, {"q_over_phi2_integrable_at_0", v(r.q_integrable)},
  };
  j["q_dot_zero"] = number(r.q_dot_zero);
  j["q_dot_one"] = number(r.q_dot_one);
  if (!r.q_dot_zero_note.empty()) j["q_dot_zero_note"] = r.q_dot_zero_note;
  if (!r.q_dot_one_note.empty()) j["q_dot_one_note"] = r.q_dot_one_note;
  j["verdicts_stated_not_derived"] = r.stated;
  j["citation"] = "fronts to 0 need (D vanishing at 1, g vanishing at 0) or (D vanishing at 0, g vanishing at both ends)";
  return j;
}

Json to_json(const SpeedBounds& b) {
  return {{"lower", number(b.lower)},
          {"lower_convective", number(b.lower_conv)},
          {"lower_reactive", number(b.lower_reac)},
          {"upper_pointwise", number(b.upper_pointwise)},
          {"upper_integral", number(b.upper_integral)},
          {"citation", "c* lies between the larger of sup f/phi and h(0) + 2 sqrt(q'(0)) and "
                       "2 sqrt(sup q/phi) + sup f/phi"}};
}

Json to_json(const CriticalSpeedResult& r, const std::string& witness_csv) {
  Json j;
  j["c_star"] = number(r.c_star);
  j["bracket"] = {number(r.bracket_lo), number(r.bracket_hi)};
  j["iterations"] = r.iterations;
  j["bounds"] = to_json(r.bounds);
  j["witness_csv_path"] = witness_csv.empty() ? Json(nullptr) : Json(witness_csv);
  j["citation"] = "c* is the least speed for which the solution from (1, 0) vanishes at 0";
  return j;
}

Json to_json(const BetaResult& r) {
  Json j;
  j["c"] = number(r.c);
  j["beta"] = number(r.beta);
  j["beta_hat"] = number(r.beta_hat);
  j["floor"] = number(r.floor);
  j["b_tol"] = number(r.b_tol);
  j["at_critical_speed"] = r.at_critical_speed;
  j["degenerate"] = r.degenerate;
  j["equality_certified"] = r.equality_certified;
  if (!r.note.empty()) j["note"] = r.note;
  Json samples = Json::array();
  for (const auto& s : r.samples) samples.push_back({{"b", number(s.b)}, {"class", to_string(s.slope_class)}});
  j["samples"] = std::move(samples);
  j["citation"] = {
      {"beta", "the admissible values of z(1) form the interval [beta, 0), and beta >= f(1) - c"},
      {"beta_hat", "beta_hat is the least z(1) whose solution leaves 0 with the slope s_plus"},
      {"equality", "beta = beta_hat when q/phi^2 is integrable at 0 and c* > h(0)"}};
  return j;
}

Json to_json(const ShootingResult& s) {
  Json j;
  j["c"] = number(s.c);
  j["direction"] = s.direction == ShootingResult::Direction::backward ? "backward" : "forward";
  if (s.direction == ShootingResult::Direction::backward) j["b"] = number(s.b);
  j["terminal"] = to_string(s.terminal);
  j["terminal_phi"] = number(s.terminal_phi);
  j["samples"] = s.phi.size();
  j["start_shift"] = number(s.start_shift);
  if (!s.phi.empty()) {
    j["z_at_phi_max"] = number(s.z.back());
    j["z_at_phi_min"] = number(s.z.front());
  }
  j["slope_at_zero_estimate"] = number(s.slope_at_zero_estimate);
  j["slope_at_zero_raw"] = number(s.slope_at_zero_raw);
  j["slope_at_one_estimate"] = number(s.slope_at_one_estimate);
  j["zeta_zero"] = number(s.zeta_zero);
  return j;
}

Json to_json(const EndpointSlope& s) {
  switch (s.kind) {
    case EndpointSlope::Kind::finite: return number(s.value);
    case EndpointSlope::Kind::minus_infinity: return "-inf";
    case EndpointSlope::Kind::indeterminate: return "indeterminate";
  }
  return nullptr;
}

Json to_json(const FrontProfile& p) {
  Json j;
  j["c"] = number(p.c);
  j["b"] = number(p.b);
  j["normalization"] = number(p.normalization);
  j["endpoints"] = {{"a", number(p.a)}, {"xi0", number(p.xi0)}};
  j["slopes"] = {{"at_a", to_json(p.slope_at_a)}, {"at_xi0", to_json(p.slope_at_xi0)}};
  j["kind_at_zero"] = to_string(p.kind_at_zero);
  j["kind_at_one"] = to_string(p.kind_at_one);
  j["confidence"] = {{"zero", p.confidence_zero}, {"one", p.confidence_one}};
  j["basis"] = {{"zero", p.basis_zero}, {"one", p.basis_one}};
  if (p.rule_matches_quadrature) j["rule_matches_quadrature"] = *p.rule_matches_quadrature;
  j["samples"] = p.xi.size();
  j["citation"] = "an equilibrium is reached at a finite xi iff the integral of D/(-z) converges there; "
                  "the slope there is the limit of z/D";
  return j;
}

Json to_json(const FactCheck& c) {
  return {{"preset", c.fact->preset},
          {"kind", to_string(c.fact->kind)},
          {"fact", c.fact->description},
          {"pass", c.pass},
          {"deviation", number(c.deviation)},
          {"tolerance", number(c.tolerance)},
          {"detail", c.detail},
          {"citation", c.fact->citation}};
}

Json to_json(const ReferenceResult& r) {
  Json runs = Json::array();
  for (std::size_t i = 0; i < r.runs.size(); ++i) runs.push_back({{"eps0", r.eps0[i]}, {"value", number(r.runs[i])}});
  return {{"quantity", to_string(r.quantity)}, {"c", number(r.c)},    {"value", number(r.value)},
          {"stable", r.stable()},              {"spread", number(r.spread)}, {"runs", runs},
          {"note", r.note}};
}

Json to_json(const RegressionCheck& c) {
  Json j = to_json(c.entry);
  j["computed"] = number(c.computed);
  j["deviation"] = number(c.deviation);
  j["tolerance"] = number(c.tolerance);
  j["pass"] = c.pass;
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["members"] = r.members.size();
  j["violation_count"] = r.violations.size();
  j["checks_by_property"] = r.checks_by_property;
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"member", x.member}, {"property", x.property}, {"detail", x.detail}});
  j["violations"] = std::move(v);
  Json m = Json::array();
  for (const auto& x : r.members)
    m.push_back({{"id", x.id},
                 {"scenario", to_string(x.scenario)},
                 {"c_star", number(x.c_star)},
                 {"beta", number(x.beta)},
                 {"beta_hat", number(x.beta_hat)},
                 {"b_tol", number(x.b_tol)},
                 {"equality_certified", x.certified}});
  j["member_results"] = std::move(m);
  j["citation"] = "solutions are ordered by z(1) and by c; beta >= f(1) - c; z >= f - c phi when z(0) = 0; "
                  "c* lies within its closed-form bounds";
  return j;
}

Json to_json(const BaselineEntry& e) {
  return {{"id", e.id},
          {"quantity", to_string(e.quantity)},
          {"c", number(e.c)},
          {"value", number(e.value)},
          {"cfg_hash", e.cfg_hash},
          {"provenance", e.provenance}};
}

BaselineEntry baseline_from_json(const Json& j) {
  BaselineEntry e;
  e.id = j.at("id").get<std::string>();
  const auto q = j.at("quantity").get<std::string>();
  if (q == "c_star")
    e.quantity = Quantity::c_star;
  else if (q == "beta")
    e.quantity = Quantity::beta;
  else if (q == "beta_hat")
    e.quantity = Quantity::beta_hat;
  else
    throw ModelError("unknown baseline quantity '" + q + "'");
  if (j.contains("c") && j["c"].is_number()) e.c = j["c"].get<double>();
  e.value = j.at("value").get<double>();
  e.cfg_hash = j.value("cfg_hash", std::string());
  e.provenance = j.value("provenance", std::string());
  return e;
}

std::vector<BaselineEntry> load_baselines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read baseline file '" + path + "'");
  std::vector<BaselineEntry> out;
  try {
    for (const auto& j : Json::parse(in)) out.push_back(baseline_from_json(j));
  } catch (const Json::exception& e) {
    throw ModelError("malformed baseline file '" + path + "': " + e.what());
  }
  return out;
}

void save_baselines(const std::string& path, const std::vector<BaselineEntry>& entries) {
  Json j = Json::array();
  for (const auto& e : entries) j.push_back(to_json(e));
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
  auto out = open_out(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c][r]);
    out << '\n';
  }
}

void write_shot_csv(const std::string& path, const ShootingResult& s, const std::string& model_name) {
  write_csv(path,
            {"model=" + model_name, "c=" + format_double(s.c),
             "terminal=" + std::string(to_string(s.terminal))},
            {"phi", "z", "zdot"}, {s.phi, s.z, s.zdot});
}

void write_profile_csv(const std::string& path, const FrontProfile& p, const std::string& model_name) {
  write_csv(path,
            {"model=" + model_name, "c=" + format_double(p.c), "b=" + format_double(p.b),
             "normalization=" + format_double(p.normalization)},
            {"xi", "phi", "dphi"}, {p.xi, p.phi, p.dphi});
}

}  // namespace twf
