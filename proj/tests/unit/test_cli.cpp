#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

const std::string kOut = (std::filesystem::temp_directory_path() / "twf_cli_test").string();

int run(const std::string& args) {
  const std::string cmd = std::string(TWF_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(run("validate --preset remark_6_2") == 0);
  CHECK(run("validate --preset fisher") == 2);
  CHECK(run("validate --preset oscillatory_8_3") == 3);
  CHECK(run("validate --preset no_such_model") == 2);
}

TEST_CASE("solvers and artifacts") {
  CHECK(run("bounds --preset fisher") == 0);
  CHECK(run("cstar --preset fisher --out " + kOut) == 0);
  CHECK(std::filesystem::exists(kOut + "/cstar_witness.csv"));
  CHECK(run("beta --preset remark_6_2 --sweep 1:3:3 --out " + kOut) == 0);
  CHECK(std::filesystem::exists(kOut + "/beta.csv"));
  CHECK(run("beta --preset remark_6_2 --c -1 --out " + kOut) == 3);
  CHECK(run("zsolve --preset fisher --c 3 --b -0.001 --out " + kOut) == 0);
  CHECK(run("profile --preset remark_9_3_model1 --c 0 --b 0 --out " + kOut) == 0);
  CHECK(run("profile --preset oscillatory_8_3 --c 0 --b 0 --out " + kOut) == 3);
  CHECK(run("presets") == 0);
}

TEST_CASE("model files") {
  const std::string path = kOut + "_model.json";
  std::ofstream(path) << R"({"name": "kpp", "f": [], "D": [1], "g": [0, 1, -1]})";
  CHECK(run("cstar --model " + path + " --out " + kOut) == 0);
  std::ofstream(path) << R"({"name": "bad", "D": "x"})";
  CHECK(run("cstar --model " + path + " --out " + kOut) == 2);
  std::filesystem::remove(path);
}

TEST_CASE("oracle suites") {
  CHECK(run("oracle --suite analytic --out " + kOut) == 0);
  CHECK(run("oracle --suite regression --out " + kOut) == 0);
}
