#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kuelsh/cli.hpp"

using namespace kuelsh;

namespace {

struct CliRun {
  int exit_code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::vector<const char*> argv = {"kuelsh"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli((int)argv.size(), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze a two-loop instance") {
  auto r = run({"analyze", "--family", "2B", "--p", "2", "--field", "gf:2", "--k", "1", "--s",
                "3", "--a", "1", "--c", "0", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"center_dim\": 6") != std::string::npos);
  CHECK(r.out.find("\"cartan_det\": 12") != std::string::npos);
}

TEST_CASE("analyze the three-line non-square instance") {
  auto r = run({"analyze", "--family", "3A", "--field", "rat:2", "--d", "t", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"t1perp_mod_reynolds_dim\": 2") != std::string::npos);
}

TEST_CASE("invalid parameters exit with 1") {
  auto r = run({"analyze", "--family", "2B", "--field", "gf:2", "--k", "1", "--s", "2"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error") != std::string::npos);
  auto r2 = run({"analyze", "--family", "2B", "--p", "3", "--field", "gf:2"});
  CHECK(r2.exit_code == 1);
}

TEST_CASE("byte-identical json across runs") {
  std::vector<std::string> args = {"analyze", "--family", "2B", "--field", "gf:4",
                                   "--k", "1", "--s", "4", "--a", "g", "--c", "1",
                                   "--format", "json"};
  auto r1 = run(args);
  auto r2 = run(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("verify-paper small grid passes") {
  auto r = run({"verify-paper", "--grid", "small"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify-paper defaults to the small grid") {
  auto r = run({"verify-paper"});
  CHECK(r.exit_code == 0);
}

TEST_CASE("custom quiver file") {
  const char* path = "/tmp/kuelsh_test_quiver.txt";
  {
    std::ofstream f(path);
    f << "field gf:2\nvertex 1\narrow x 1 1\nrel x^3 = 0\n";
  }
  auto r = run({"custom", "--quiver", path, "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"center_dim\": 3") != std::string::npos);
  CHECK(r.out.find("\"expectation_status\": \"uncovered\"") != std::string::npos);
  std::remove(path);
}

TEST_CASE("malformed custom file exits with 1") {
  const char* path = "/tmp/kuelsh_bad_quiver.txt";
  {
    std::ofstream f(path);
    f << "field gf:2\nvertex 1\narrow x 1 1\nrel x^3 == 0\n";
  }
  auto r = run({"custom", "--quiver", path});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error") != std::string::npos);
  std::remove(path);
  auto r2 = run({"custom", "--quiver", "/tmp/does_not_exist_kuelsh.txt"});
  CHECK(r2.exit_code == 1);
}

TEST_CASE("custom pipeline matches the family pipeline") {
  const char* path = "/tmp/kuelsh_family_quiver.txt";
  {
    std::ofstream f(path);
    f << "field gf:2\nvertex 1 2\n";
    f << "arrow alpha 1 1\narrow beta 1 2\narrow gamma 2 1\narrow eta 2 2\n";
    f << "rel beta.eta = alpha.beta\n";
    f << "rel eta.gamma = gamma.alpha\n";
    f << "rel alpha.alpha = beta.gamma\n";
    f << "rel gamma.beta = eta^2\n";
    f << "rel alpha.alpha.beta = 0\n";
    f << "rel gamma.alpha.alpha = 0\n";
    f << "loewy 4\n";
  }
  auto custom = run({"custom", "--quiver", path, "--format", "json"});
  auto family = run({"analyze", "--family", "2B", "--field", "gf:2", "--k", "1", "--s", "3",
                     "--a", "1", "--c", "0", "--format", "json"});
  CHECK(custom.exit_code == 0);
  // identical computed sections: compare the ladder blocks
  auto section = [](const std::string& s) {
    auto from = s.find("\"ladder\"");
    auto to = s.find("\"small_params\"");
    return s.substr(from, to - from);
  };
  CHECK(section(custom.out) == section(family.out));
  std::remove(path);
}

TEST_CASE("wider coefficient fields") {
  auto r8 = run({"analyze", "--family", "2B", "--field", "gf:8", "--k", "1", "--s", "3", "--a",
                 "g", "--c", "g^2+1", "--format", "json"});
  CHECK(r8.exit_code == 0);
  CHECK(r8.out.find("\"expectation_status\": \"match\"") != std::string::npos);
  auto r9 = run({"analyze", "--family", "2B", "--field", "gf:9", "--k", "1", "--s", "3", "--a",
                 "g", "--c", "0", "--format", "json"});
  CHECK(r9.exit_code == 0);
  // p=3 over a perfect field: the cube casework still applies
  CHECK(r9.out.find("\"expectation_status\": \"mismatch\"") == std::string::npos);
}

TEST_CASE("env ladder depth is honored and flags win") {
  setenv("KUELSH_NMAX", "1", 1);
  auto r = run({"analyze", "--family", "2B", "--field", "gf:2", "--k", "1", "--s", "3", "--a",
                "1", "--c", "0", "--format", "json"});
  unsetenv("KUELSH_NMAX");
  CHECK(r.exit_code == 0);
  // depth 1 means exactly the n=0 and n=1 rungs
  CHECK(r.out.find("\"n\": 1") != std::string::npos);
  CHECK(r.out.find("\"n\": 2") == std::string::npos);
}
