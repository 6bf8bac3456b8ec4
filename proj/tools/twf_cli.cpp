// twf: command-line front end for the traveling-wave front library.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twf/assumptions.hpp"
#include "twf/errors.hpp"
#include "twf/model.hpp"
#include "twf/oracle.hpp"
#include "twf/presets.hpp"
#include "twf/profile.hpp"
#include "twf/report_io.hpp"
#include "twf/singular_ode.hpp"
#include "twf/thresholds.hpp"

#ifndef TWF_DATA_DIR
#define TWF_DATA_DIR "tests/data"
#endif

namespace fs = std::filesystem;
using namespace twf;

namespace {

// exit code for a failed oracle suite; the numbered codes above 1 are reserved
constexpr int kSuiteFailed = 1;

struct Common {
  std::string preset;
  std::string model_path;
  std::string out_dir;
  bool json = false;
  std::optional<double> eps0;
  std::optional<double> rtol;
  std::uint64_t seed = 20240601;

  [[nodiscard]] IntegratorConfig integrator() const {
    IntegratorConfig cfg;
    if (eps0) cfg.eps0 = *eps0;
    if (rtol) cfg.rel_tol = *rtol;
    cfg.validate();
    return cfg;
  }

  [[nodiscard]] Model model() const {
    if (preset.empty() == model_path.empty()) throw ModelError("give exactly one of --preset and --model");
    if (!preset.empty()) {
      ModelSpec spec;
      spec.special = preset;
      spec.name = preset;
      return build_model(spec);
    }
    return build_model(load_model_spec(model_path));
  }

  // Writes the JSON report under --out and prints it with --json.
  void emit(const std::string& name, const Json& j, const std::string& text) const {
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      std::ofstream(fs::path(out_dir) / (name + ".json")) << j.dump(2) << '\n';
    }
    if (json)
      std::cout << j.dump(2) << '\n';
    else
      std::cout << text;
  }

  [[nodiscard]] std::string out_path(const std::string& file) const {
    if (out_dir.empty()) return {};
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / file).string();
  }
};

void add_common(CLI::App* cmd, Common& c, bool needs_model = true) {
  if (needs_model) {
    auto* p = cmd->add_option("--preset", c.preset, "named model from the registry");
    auto* m = cmd->add_option("--model", c.model_path, "JSON model file");
    p->excludes(m);
  }
  cmd->add_option("--out", c.out_dir, "directory for JSON and CSV artifacts");
  cmd->add_flag("--json", c.json, "print the JSON report instead of text");
  cmd->add_option("--eps0", c.eps0, "distance from the corner where shots start or stop");
  cmd->add_option("--rtol", c.rtol, "integrator relative tolerance");
  cmd->add_option("--seed", c.seed, "seed for randomized suites");
}

std::string g(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

std::string g(const std::optional<double>& x) { return x ? g(*x) : "n/a"; }

std::string g(const EndpointSlope& s) {
  switch (s.kind) {
    case EndpointSlope::Kind::finite: return g(s.value);
    case EndpointSlope::Kind::minus_infinity: return "-inf";
    case EndpointSlope::Kind::indeterminate: return "indeterminate";
  }
  return "?";
}

// ---- commands -------------------------------------------------------------

int cmd_validate(const Common& c) {
  const Model m = c.model();
  const AssumptionReport r = validate_assumptions(m);
  std::ostringstream t;
  t << "model " << m.name() << ": scenario " << to_string(r.scenario) << '\n'
    << "  q positive inside        " << to_string(r.q_positive) << '\n'
    << "  q/phi bounded at 0       " << to_string(r.q_linear_bound) << '\n'
    << "  q/phi^2 integrable at 0  " << to_string(r.q_integrable) << '\n'
    << "  q'(0) = " << (r.q_dot_zero ? g(*r.q_dot_zero) : "does not exist (" + r.q_dot_zero_note + ")") << '\n'
    << "  q'(1) = " << (r.q_dot_one ? g(*r.q_dot_one) : "does not exist (" + r.q_dot_one_note + ")") << '\n';
  c.emit("validate", to_json(r), t.str());
  if (!r.derivatives_exist()) {
    std::cerr << "warning: an endpoint derivative of q does not exist; slope-based operations will refuse\n";
    return static_cast<int>(ExitCode::prerequisite_missing);
  }
  return r.front_scenario() ? 0 : static_cast<int>(ExitCode::model_failure);
}

int cmd_bounds(const Common& c) {
  const Model m = c.model();
  const SpeedBounds b = analytic_bounds(m);
  std::ostringstream t;
  t << "lower bound            " << g(b.lower) << "\n"
    << "  convective           " << g(b.lower_conv) << "\n"
    << "  reactive             " << g(b.lower_reac) << "\n"
    << "upper bound pointwise  " << g(b.upper_pointwise) << "\n"
    << "upper bound integral   " << g(b.upper_integral) << "\n";
  c.emit("bounds", to_json(b), t.str());
  return 0;
}

int cmd_cstar(const Common& c) {
  const Model m = c.model();
  const CriticalSpeedResult r = critical_speed(m, c.integrator());
  const std::string witness = c.out_path("cstar_witness.csv");
  if (!witness.empty()) write_shot_csv(witness, r.witness, m.name());
  std::ostringstream t;
  t << "c* = " << g(r.c_star) << "  (bracket [" << g(r.bracket_lo) << ", " << g(r.bracket_hi) << "], "
    << r.iterations << " bisections)\n";
  c.emit("cstar", to_json(r, witness), t.str());
  return 0;
}

std::vector<double> parse_sweep(const std::string& s) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(b >= a) || (n > 1 && b == a))
    throw ModelError("sweep must read a:b:n with a < b and n >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

int cmd_beta(const Common& c, std::optional<double> speed, const std::string& sweep) {
  if (speed.has_value() == !sweep.empty()) throw ModelError("give exactly one of --c and --sweep");
  const Model m = c.model();
  const IntegratorConfig cfg = c.integrator();
  const double c_star = critical_speed(m, cfg).c_star;
  const std::vector<double> speeds = speed ? std::vector<double>{*speed} : parse_sweep(sweep);
  Json rows = Json::array();
  std::ostringstream t;
  t << "c* = " << g(c_star) << "\n";
  std::vector<std::vector<double>> cols(4);
  for (const double s : speeds) {
    const BetaResult r = beta_thresholds(m, s, c_star, cfg);
    rows.push_back(to_json(r));
    t << "c = " << g(s) << "  beta = " << g(r.beta) << "  beta_hat = " << g(r.beta_hat) << "  floor = " << g(r.floor)
      << (r.degenerate ? "  (degenerate branches)" : "") << (r.note.empty() ? "" : "  [" + r.note + "]") << "\n";
    cols[0].push_back(s);
    cols[1].push_back(r.beta.value_or(NAN));
    cols[2].push_back(r.beta_hat.value_or(NAN));
    cols[3].push_back(r.floor);
  }
  Json j = {{"model", m.name()}, {"c_star", number(c_star)}};
  if (speed)
    j["result"] = rows.front();
  else
    j["results"] = rows;
  const std::string csv = c.out_path("beta.csv");
  if (!csv.empty()) write_csv(csv, {"model=" + m.name()}, {"c", "beta", "beta_hat", "floor"}, cols);
  c.emit("beta", j, t.str());
  return 0;
}

int cmd_zsolve(const Common& c, double speed, std::optional<double> b, const std::string& branch) {
  if (b.has_value() == !branch.empty()) throw ModelError("give exactly one of --b and --branch");
  const Model m = c.model();
  const IntegratorConfig cfg = c.integrator();
  ShootingResult s;
  if (b) {
    if (*b > 0) throw ModelError("z(1) must be <= 0");
    s = integrate_backward_from_one(m, speed, *b, cfg);
  } else {
    if (branch != "s_minus" && branch != "s_plus") throw ModelError("branch must be s_minus or s_plus");
    s = integrate_forward_from_zero(m, speed, branch == "s_minus" ? Branch::s_minus : Branch::s_plus, cfg);
  }
  const std::string csv = c.out_path("zsolve.csv");
  if (!csv.empty()) write_shot_csv(csv, s, m.name());
  Json j = to_json(s);
  if (m.q_dot_at_zero() && s.succeeded() && speed >= s_pm_threshold(m))
    j["slope_class"] = to_string(classify_slope(m, speed, s));
  std::ostringstream t;
  t << "run " << to_string(s.terminal) << " at phi = " << g(s.terminal_phi) << " after " << s.phi.size()
    << " samples\n";
  if (!s.phi.empty())
    t << "z(" << g(s.phi_min()) << ") = " << g(s.z.front()) << ",  z(" << g(s.phi_max()) << ") = " << g(s.z.back())
      << "\n";
  t << "slope at 0 ~ " << g(s.slope_at_zero_estimate) << ",  slope at 1 ~ " << g(s.slope_at_one_estimate) << "\n";
  if (j.contains("slope_class")) t << "slope class at 0: " << j["slope_class"].get<std::string>() << "\n";
  c.emit("zsolve", j, t.str());
  return s.succeeded() ? 0 : static_cast<int>(ExitCode::non_convergence);
}

int cmd_profile(const Common& c, double speed, double b, double normalization) {
  const Model m = c.model();
  const IntegratorConfig cfg = c.integrator();
  const ShootingResult s = integrate_backward_from_one(m, speed, b, cfg);
  std::optional<ClassificationContext> ctx;
  if (m.q_dot_at_zero() && m.q_dot_at_one() && m.has_flux()) {
    const ThresholdConfig tcfg;
    const double c_star = critical_speed(m, cfg, tcfg).c_star;
    ClassificationContext k{c_star, std::nullopt};
    if (speed > c_star + tcfg.c_tol) k.beta_hat = beta_thresholds(m, speed, c_star, cfg, tcfg).beta_hat;
    ctx = k;
  }
  ProfileConfig pcfg;
  pcfg.normalization = normalization;
  const FrontProfile p = build_profile(m, s, pcfg, ctx);
  const std::string csv = c.out_path("profile.csv");
  if (!csv.empty()) write_profile_csv(csv, p, m.name());
  std::ostringstream t;
  t << "a = " << g(p.a) << "   xi0 = " << g(p.xi0) << "\n"
    << "at 1: " << to_string(p.kind_at_one) << ", slope " << g(p.slope_at_a) << " (" << p.confidence_one << ")\n"
    << "at 0: " << to_string(p.kind_at_zero) << ", slope " << g(p.slope_at_xi0) << " (" << p.confidence_zero
    << ")\n";
  c.emit("profile", to_json(p), t.str());
  return 0;
}

int cmd_oracle(const Common& c, const std::string& suite, int corpus_size, std::string baseline, bool mint) {
  const IntegratorConfig cfg = c.integrator();
  if (baseline.empty()) baseline = std::string(TWF_DATA_DIR) + "/baselines.json";
  std::ostringstream t;
  Json j;
  bool ok = true;
  if (suite == "analytic") {
    Json rows = Json::array();
    for (const auto& chk : analytic_suite(cfg)) {
      ok = ok && chk.pass;
      rows.push_back(to_json(chk));
      t << (chk.pass ? "PASS " : "FAIL ") << chk.fact->preset << " " << to_string(chk.fact->kind) << ": "
        << chk.fact->description << "  (deviation " << g(chk.deviation) << ")\n";
    }
    j = {{"suite", "analytic"}, {"pass", ok}, {"facts", rows}};
  } else if (suite == "properties") {
    const PropertyReport r = property_suite(random_corpus(corpus_size, c.seed), cfg);
    ok = r.ok();
    j = to_json(r);
    j["suite"] = "properties";
    j["seed"] = c.seed;
    for (const auto& [name, n] : r.checks_by_property) t << name << ": " << n << " checks\n";
    for (const auto& v : r.violations) t << "VIOLATION " << v.member << " " << v.property << ": " << v.detail << "\n";
    t << r.members.size() << " models, " << r.violations.size() << " violations\n";
  } else if (suite == "regression") {
    if (mint) {
      std::vector<std::string> unstable;
      const auto entries = mint_baselines(&unstable);
      save_baselines(baseline, entries);
      for (const auto& u : unstable) t << "unstable: " << u << "\n";
      t << "wrote " << entries.size() << " entries to " << baseline << "\n";
      ok = unstable.empty();
      j = {{"suite", "regression"}, {"minted", entries.size()}, {"unstable", unstable}};
    } else {
      Json rows = Json::array();
      for (const auto& rc : regression_suite(load_baselines(baseline), cfg)) {
        ok = ok && rc.pass;
        rows.push_back(to_json(rc));
        t << (rc.pass ? "PASS " : "FAIL ") << rc.entry.id << " " << to_string(rc.entry.quantity)
          << (rc.entry.c ? " at c = " + g(*rc.entry.c) : "") << ": " << g(rc.computed) << " vs " << g(rc.entry.value)
          << (rc.error.empty() ? "" : "  " + rc.error) << "\n";
      }
      j = {{"suite", "regression"}, {"pass", ok}, {"checks", rows}};
    }
  } else {
    throw ModelError("unknown suite '" + suite + "'");
  }
  c.emit("oracle_" + suite, j, t.str());
  return ok ? 0 : kSuiteFailed;
}

int cmd_presets(const Common& c) {
  Json j = Json::array();
  std::ostringstream t;
  for (const auto& p : presets()) {
    j.push_back({{"name", p.name}, {"description", p.description}, {"polynomial", p.spec.has_value()}});
    t << p.name << "\n    " << p.description << "\n";
  }
  c.emit("presets", j, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling-wave fronts of degenerate diffusion-convection-reaction equations"};
  app.require_subcommand(1);
  Common common;

  auto* validate = app.add_subcommand("validate", "check the standing assumptions and the front scenario");
  add_common(validate, common);
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds on the critical speed");
  add_common(bounds, common);
  auto* cstar = app.add_subcommand("cstar", "critical speed by bisection");
  add_common(cstar, common);

  auto* beta = app.add_subcommand("beta", "thresholds beta and beta_hat at one speed or a sweep");
  add_common(beta, common);
  std::optional<double> beta_c;
  std::string sweep;
  beta->add_option("--c", beta_c, "speed");
  beta->add_option("--sweep", sweep, "speeds a:b:n");

  auto* zsolve = app.add_subcommand("zsolve", "one shot of the reduced problem");
  add_common(zsolve, common);
  double z_c = 0;
  std::optional<double> z_b;
  std::string branch;
  zsolve->add_option("--c", z_c, "speed")->required();
  zsolve->add_option("--b", z_b, "backward run from z(1) = b");
  zsolve->add_option("--branch", branch, "forward run on s_minus or s_plus");

  auto* profile = app.add_subcommand("profile", "profile and its classification at both equilibria");
  add_common(profile, common);
  double p_c = 0, p_b = 0, p_norm = 0.5;
  profile->add_option("--c", p_c, "speed")->required();
  profile->add_option("--b", p_b, "z(1)");
  profile->add_option("--normalization", p_norm, "value of phi at xi = 0");

  auto* oracle = app.add_subcommand("oracle", "analytic, property and regression suites");
  add_common(oracle, common, false);
  std::string suite = "analytic", baseline;
  int corpus = 50;
  bool mint = false;
  oracle->add_option("--suite", suite, "analytic | properties | regression");
  oracle->add_option("--corpus", corpus, "number of random models");
  oracle->add_option("--baseline", baseline, "baseline file for the regression suite");
  oracle->add_flag("--mint", mint, "rewrite the baseline file from the reference solver");

  auto* list = app.add_subcommand("presets", "list the named models");
  add_common(list, common, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(common);
    if (*bounds) return cmd_bounds(common);
    if (*cstar) return cmd_cstar(common);
    if (*beta) return cmd_beta(common, beta_c, sweep);
    if (*zsolve) return cmd_zsolve(common, z_c, z_b, branch);
    if (*profile) return cmd_profile(common, p_c, p_b, p_norm);
    if (*oracle) return cmd_oracle(common, suite, corpus, baseline, mint);
    if (*list) return cmd_presets(common);
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n  reason: " << e.citation() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  }
  return 0;
}
