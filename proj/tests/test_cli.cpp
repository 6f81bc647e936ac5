#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "groundstate/cli.hpp"
#include "groundstate/config.hpp"
#include "groundstate/report_io.hpp"

using namespace groundstate;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("groundstate_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "groundstate");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kWell = R"([grid]
N = 3
r_max = 30
n = 4096

[potential]
family = decaying-well
a = 1
b = 0.2
alpha = 2
)";

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::io_error;
}

}  // namespace

TEST_CASE("config defaults and parsing") {
  RunConfig d;
  CHECK(parse_config("") == d);
  auto c = parse_config(kWell);
  CHECK(c.potential.family == "decaying-well");
  CHECK(c.potential.params.at("b") == 0.2);
  CHECK(c.grid.n == 4096);
  auto ctx = build_context(c);
  CHECK(ctx.V_inf() == 1.0);
  CHECK(ctx.grid().size() == 4096);
}

TEST_CASE("config round trip through the dump") {
  auto c = parse_config(kWell);
  apply_override(c, "solver.seed=17");
  apply_override(c, "sweep.lambda_grid=0.99, 0.995, 1");
  apply_override(c, "potential.theta=0.93");
  apply_override(c, "output.csv=false");
  CHECK(parse_config(dump_config(c)) == c);
  CHECK(dump_config(parse_config(dump_config(c))) == dump_config(c));

  RunConfig p;
  apply_override(p, "potential.family=perturbed");
  apply_override(p, "potential.profile=gaussian");
  apply_override(p, "nonlinearity.family=bounded");
  CHECK(parse_config(dump_config(p)) == p);
}

TEST_CASE("strict config errors") {
  CHECK(kind_of([] { parse_config("[grid]\nbogus = 1\n"); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("[nowhere]\n"); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("[grid]\nn = many\n"); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("[potential]\nfamily = constant\nb = 0.2\n"); }) == ErrorKind::config_error);
  RunConfig c;
  CHECK(kind_of([&] { apply_override(c, "grid.n"); }) == ErrorKind::config_error);
  CHECK(kind_of([&] { apply_override(c, "potential.family=spiky"); }) == ErrorKind::config_error);
}

TEST_CASE("exit code contract") {
  CHECK(exit_code_for(ErrorKind::config_error) == 1);
  CHECK(exit_code_for(ErrorKind::io_error) == 1);
  CHECK(exit_code_for(ErrorKind::grid_mismatch) == 1);
  CHECK(exit_code_for(ErrorKind::non_convergence) == 2);
  CHECK(exit_code_for(ErrorKind::bracket_not_found) == 2);
  CHECK(exit_code_for(ErrorKind::precondition_failed) == 3);
  CHECK(exit_code_for(ErrorKind::not_in_lambda) == 3);
  CHECK(exit_code_for(ErrorKind::constraint_infeasible) == 3);
}

TEST_CASE("check-conditions on the decaying well") {
  auto dir = scratch("conditions");
  write(dir / "well.ini", kWell);
  CHECK(run({"check-conditions", "--config", (dir / "well.ini").string(), "--out", (dir / "out").string()}) == 0);
  auto j = json::parse(slurp(dir / "out" / "conditions.json"));
  CHECK(j["theta_min_V4"].get<double>() == doctest::Approx(0.8).epsilon(0.01));
  CHECK(j["pass"].get<bool>());
  CHECK(j["theta_used"].get<double>() < 1.0);
  CHECK(fs::exists(dir / "out" / "config.ini"));
  auto expected = parse_config(kWell);
  expected.output.dir = (dir / "out").string();
  CHECK(parse_config(slurp(dir / "out" / "config.ini")) == expected);

  CHECK(run({"check-conditions", "--set", "nonlinearity.family=linear", "--out", (dir / "lin").string()}) == 3);
}

TEST_CASE("solve-limit writes a profile and a report, verify checks grids") {
  auto dir = scratch("solve");
  const auto out = (dir / "bl").string();
  REQUIRE(run({"solve-limit", "--out", out}) == 0);
  auto j = json::parse(slurp(dir / "bl" / "solution.json"));
  CHECK(j["route"] == "bl-constrained");
  CHECK(j["energy"].get<double>() == doctest::Approx(18.897).epsilon(1e-3));
  CHECK(j["grid"]["n"] == 4096);
  const std::string csv = slurp(dir / "bl" / "profile.csv");
  CHECK(csv.rfind("r,u\n", 0) == 0);
  auto u = read_profile_csv(dir / "bl" / "profile.csv", make_grid(3, 30.0, 4096));
  CHECK(u[0] == doctest::Approx(j["u_at_zero"].get<double>()));

  const auto sol = (dir / "bl" / "solution.json").string();
  CHECK(run({"verify", "--solution", sol, "--out", (dir / "v0").string()}) == 0);
  auto v = json::parse(slurp(dir / "v0" / "verification.json"));
  CHECK(v["pass"].get<bool>());
  CHECK(v["with_solution"].get<bool>());
  CHECK(run({"verify", "--solution", sol, "--set", "grid.n=2048", "--out", (dir / "v1").string()}) == 1);
  CHECK(run({"verify", "--solution", (dir / "missing.json").string(), "--out", (dir / "v2").string()}) == 1);
}

TEST_CASE("same config and seed give byte-identical reports") {
  auto dir = scratch("repro");
  for (const char* run_dir : {"a", "b"})
    REQUIRE(run({"project", "--seed", "3", "--out", (dir / run_dir).string()}) == 0);
  CHECK(slurp(dir / "a" / "projection.json") == slurp(dir / "b" / "projection.json"));
  CHECK(slurp(dir / "a" / "fiber.csv") == slurp(dir / "b" / "fiber.csv"));
  auto j = json::parse(slurp(dir / "a" / "projection.json"));
  CHECK(j["sign_changes"] == 1);
}

TEST_CASE("command line errors") {
  auto dir = scratch("errors");
  CHECK(run({"frobnicate"}) == 1);
  CHECK(run({"solve", "--config", (dir / "nope.ini").string()}) == 1);
  CHECK(run({"solve", "--set", "grid.bogus=1"}) == 1);
  CHECK(run({"solve", "--set", "solver.max_iters=1", "--out", (dir / "cap").string()}) == 2);
  CHECK(run({"oracle-shoot", "--set", "nonlinearity.family=zero", "--out", (dir / "zero").string()}) == 2);
  CHECK(run({"solve-limit", "--set", "nonlinearity.family=bounded", "--set", "nonlinearity.c=0.1", "--out",
             (dir / "bnd").string()}) == 3);
  CHECK(run({"sweep-lambda", "--out", (dir / "flat").string()}) == 3);
  CHECK(run({"--dump-config", "--set", "grid.n=1024"}) == 0);
}

TEST_CASE("json numbers use 17 significant digits and null for non-finite") {
  json j{{"a", 0.1}, {"b", std::nan("")}, {"c", 3}, {"d", "x"}};
  const std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"b\": null") != std::string::npos);
  CHECK(s.find("\"c\": 3") != std::string::npos);
}
