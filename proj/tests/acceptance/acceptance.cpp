// Acceptance criteria AC1-AC9. One PASS/FAIL line each; exit status is the
// number of failures.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twf/errors.hpp"
#include "twf/oracle.hpp"
#include "twf/presets.hpp"
#include "twf/profile.hpp"
#include "twf/singular_ode.hpp"
#include "twf/thresholds.hpp"

using namespace twf;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  double seconds = 0.0;
};

CliRun run_cli(const std::string& args) {
  const auto t0 = std::chrono::steady_clock::now();
  CliRun r;
  const std::string cmd = std::string(TWF_CLI) + " " + args + " 2>/dev/null";
  if (FILE* p = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Model preset(const std::string& name) { return find_preset(name)->build(); }

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  std::array<char, 512> buf{};
  std::snprintf(buf.data(), buf.size(), f, args...);
  return buf.data();
}

// cstar through the CLI: value, wall time
bool cli_cstar(const std::string& name, double expect, std::string& detail) {
  const CliRun r = run_cli("cstar --preset " + name + " --json --out /tmp/twf_acceptance");
  if (r.status != 0) {
    detail += fmt("%s exit %d; ", name.c_str(), r.status);
    return false;
  }
  const double c = nlohmann::json::parse(r.out).at("c_star").get<double>();
  const bool ok = std::abs(c - expect) <= 1e-3 && r.seconds < 5.0;
  detail += fmt("%s c*=%.3g (%.2fs); ", name.c_str(), c, r.seconds);
  return ok;
}

void ac1() {
  std::string d;
  bool ok = cli_cstar("remark_6_2", 0.0, d);
  ok = cli_cstar("counterexample_6_2b", 0.0, d) && ok;
  report("AC1", ok, d);
}

void ac2() {
  const SpeedBounds b = analytic_bounds(preset("fisher"));
  std::string d = fmt("bounds [%.12g, %.12g]; ", b.lower, b.upper_pointwise.value_or(NAN));
  bool ok = b.upper_pointwise && std::abs(*b.upper_pointwise - b.lower) < 1e-12;
  ok = cli_cstar("fisher", 2.0, d) && ok;
  report("AC2", ok, d);
}

void ac3() {
  const ShootingResult s = integrate_backward_from_one(preset("remark_6_2"), 0.0, 0.0);
  double worst = s.succeeded() ? 0.0 : INFINITY;
  if (s.succeeded())
    for (int i = 0; i <= 20000; ++i) {
      const double x = 1e-4 + (1.0 - 2e-4) * i / 20000.0;
      worst = std::max(worst, std::abs(s.z_at(x) - x * x * (x - 1.0)));
    }
  report("AC3", worst <= 1e-6, fmt("sup |z - phi^2(phi-1)| on [1e-4, 1-1e-4] = %.3g", worst));
}

void ac4() {
  std::string d;
  bool ok = true;
  for (const char* name : {"remark_9_3_model1", "remark_9_3_model2"}) {
    const Preset* p = find_preset(name);
    const Model m = p->build();
    try {
      const FrontProfile prof = build_profile(m, integrate_backward_from_one(m, 0.0, 0.0), {},
                                              ClassificationContext{0.0, std::nullopt});
      const ExactProfile& ex = *p->facts.profile;
      double worst = 0.0;
      const double hi = std::min(ex.xi0, 5.0);
      for (double x = -5.0; x <= hi; x += 1e-3) worst = std::max(worst, std::abs(prof.phi_at(x) - ex.phi(x)));
      const bool xi0_ok = std::isinf(ex.xi0) ? std::isinf(prof.xi0) : std::abs(prof.xi0 - ex.xi0) <= 1e-6;
      ok = ok && worst <= 1e-4 && xi0_ok;
      d += fmt("%s sup=%.2g xi0=%.9g; ", name, worst, prof.xi0);
    } catch (const Error& e) {
      ok = false;
      d += fmt("%s error: %s; ", name, e.what());
    }
  }
  report("AC4", ok, d);
}

void ac5() {
  std::string d;
  bool ok = true;
  const std::vector<std::pair<std::string, double>> cases = {{"remark_6_2", 0.0}, {"fisher", 2.0}};
  for (const auto& [name, cs] : cases) {
    const Model m = preset(name);
    for (double c : {cs, cs + 1.0}) {
      const ShootingResult s = integrate_backward_from_one(m, c, 0.0);
      const double r1 = r_plus(m, c);
      const auto [sm, sp] = s_pm(m, c);
      const double want0 = c == cs ? sm : sp;
      const double e1 = s.slope_at_one_estimate ? rel(*s.slope_at_one_estimate, r1) : INFINITY;
      const double e0 = s.slope_at_zero_estimate ? rel(*s.slope_at_zero_estimate, want0) : INFINITY;
      ok = ok && e1 <= 1e-4 && e0 <= 1e-4;
      d += fmt("%s c=%g: err(1)=%.1e err(0)=%.1e; ", name.c_str(), c, e1, e0);
    }
  }
  report("AC5", ok, d);
}

PropertyReport corpus_report;

void ac6() {
  corpus_report = property_suite(random_corpus(50, 20240601));
  int checks = 0;
  for (const auto& [k, n] : corpus_report.checks_by_property) checks += n;
  const bool ok = corpus_report.members.size() == 50 && corpus_report.ok() && corpus_report.seconds < 600.0;
  std::string d = fmt("50 models, %d checks, %zu violations, %.1fs", checks, corpus_report.violations.size(),
                      corpus_report.seconds);
  for (const auto& v : corpus_report.violations) d += "\n    " + v.member + " " + v.property + ": " + v.detail;
  report("AC6", ok, d);
}

void ac7() {
  int certified = 0;
  double worst = 0.0;
  bool ok = true;
  for (const auto& m : corpus_report.members) {
    if (!m.certified) continue;
    ++certified;
    if (!m.beta || !m.beta_hat) {
      ok = false;
      continue;
    }
    const double gap = std::abs(*m.beta - *m.beta_hat);
    worst = std::max(worst, gap / m.b_tol);
    ok = ok && gap <= 10.0 * m.b_tol;
  }
  report("AC7", ok && certified > 0,
         fmt("%d certified members, max |beta - beta_hat| / b_tol = %.2f", certified, worst));
}

void ac8() {
  std::string d;
  bool ok = true;
  const auto expect_refusal = [&](const char* what, const std::function<void()>& call) {
    try {
      call();
      ok = false;
      d += fmt("%s not refused; ", what);
    } catch (const Refusal& e) {
      ok = ok && static_cast<int>(e.exit_code()) == 3;
    }
  };
  expect_refusal("r_plus", [] { (void)r_plus(preset("oscillatory_7_2"), 0.0); });
  expect_refusal("s_pm", [] { (void)s_pm(preset("oscillatory_8_3"), 0.0); });
  const CliRun a = run_cli("zsolve --preset oscillatory_7_2 --c 0 --b 0 --out /tmp/twf_acceptance");
  const CliRun b = run_cli("zsolve --preset oscillatory_8_3 --c 0 --branch s_minus --out /tmp/twf_acceptance");
  ok = ok && a.status == 3 && b.status == 3;
  d += fmt("cli exit codes %d (start at 1), %d (start at 0)", a.status, b.status);
  report("AC8", ok, d);
}

void ac9() {
  std::string d;
  bool ok = true;
  for (const char* name : {"remark_9_3_model1", "remark_9_3_model2"}) {
    const Model m = preset(name);
    const ShootingResult s = integrate_backward_from_one(m, 0.0, 0.0);
    const ClassificationContext ctx{0.0, std::nullopt};
    ProfileConfig c5, c7;
    c7.normalization = 0.7;
    const FrontProfile p5 = build_profile(m, s, c5, ctx);
    const FrontProfile p7 = build_profile(m, s, c7, ctx);
    const double shift = xi_of_phi(m, s, 0.7, 0.5);
    double worst = 0.0;
    for (double x = -5.0; x <= 5.0; x += 1e-3) worst = std::max(worst, std::abs(p7.phi_at(x) - p5.phi_at(x + shift)));
    ok = ok && worst <= 1e-6;
    d += fmt("%s shift=%.9g sup=%.2g; ", name, shift, worst);
  }
  report("AC9", ok, d);
}

}  // namespace

int main() {
  for (auto* ac : {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9}) {
    try {
      ac();
    } catch (const std::exception& e) {
      std::printf("unexpected error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
