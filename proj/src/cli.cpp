#include "groundstate/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "groundstate/config.hpp"
#include "groundstate/report_io.hpp"
#include "groundstate/sampling.hpp"
#include "groundstate/verify.hpp"

namespace groundstate {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_convergence:
    case ErrorKind::left_lambda:
    case ErrorKind::bracket_not_found:
    case ErrorKind::stiff_failure:
      return 2;
    case ErrorKind::not_in_lambda:
    case ErrorKind::no_sign_change:
    case ErrorKind::multiple_sign_changes:
    case ErrorKind::constraint_infeasible:
    case ErrorKind::no_positivity_ball:
    case ErrorKind::precondition_failed:
      return 3;
    default:
      return 1;
  }
}

namespace {

struct Run {
  RunConfig cfg;
  fs::path out;
  std::string solution;
};

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void emit_json(const Run& run, const std::string& name, const json& j) {
  if (run.cfg.output.json) write_atomic(run.out / name, dump_json(j));
}

void emit_csv(const Run& run, const std::string& name, const std::string& text) {
  if (run.cfg.output.csv) write_atomic(run.out / name, text);
}

json config_json(const RunConfig& c) {
  json pot = json::object();
  for (const auto& [k, v] : c.potential.params) pot[k] = v;
  json non = json::object();
  for (const auto& [k, v] : c.nonlinearity.params) non[k] = v;
  return {{"potential", {{"family", c.potential.family}, {"params", pot}}},
          {"nonlinearity", {{"family", c.nonlinearity.family}, {"params", non}}}};
}

int write_solution(const Run& run, const std::string& cmd, const SolveReport& rep) {
  json j = to_json(rep);
  j["command"] = cmd;
  j["config"] = config_json(run.cfg);
  j["profile_csv"] = "profile.csv";
  emit_json(run, "solution.json", j);
  emit_csv(run, "profile.csv", profile_csv(rep.u_star));
  std::cout << cmd << ": " << rep.route << " m=" << g(rep.energy) << " pohozaev=" << g(rep.pohozaev_residual)
            << " residual=" << g(rep.pde_residual) << " u(0)=" << g(rep.u_at_zero) << "\n";
  return 0;
}

int cmd_check_conditions(const Run& run) {
  const RunConfig& c = run.cfg;
  const PotentialSpec V = build_potential(c);
  const NonlinearitySpec f = build_nonlinearity(c);
  const int N = c.grid.N;
  const SampleLattice lattice = SampleLattice::standard(c.grid.r_max);

  const ThetaEstimate t4 = estimate_theta_V4(V, N, lattice.r);
  const ThetaEstimate t3 = estimate_theta_V3(V, N, lattice);
  const double theta = resolve_theta(V, N, c.grid.r_max);

  std::vector<ConditionReport> reports;
  reports.push_back(check_V1V2(V, lattice.r));
  reports.push_back(check_V3(V, N, theta, lattice));
  reports.push_back(check_V4(V, N, theta, lattice.r));
  reports.push_back(check_virial_bounds(V, N, theta, lattice.r));
  const NonlinearityCheck fc = check_F(f, N, V.V_inf);
  reports.insert(reports.end(), fc.reports.begin(), fc.reports.end());
  if (c.potential.family == "perturbed") {
    auto h = check_H(build_profile(c.potential.profile), N, lattice.r);
    reports.insert(reports.end(), h.begin(), h.end());
  }

  const bool pass = all_pass(reports);
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  json j{{"command", "check-conditions"},
         {"config", config_json(c)},
         {"grid", {{"N", N}, {"r_max", c.grid.r_max}, {"n", c.grid.n}}},
         {"theta_min_V4", t4.theta},
         {"theta_V3", t3.theta},
         {"theta_V3_found", t3.pass},
         {"theta_used", theta},
         {"C0", fc.C0},
         {"s0", fc.s0 ? json(*fc.s0) : json(nullptr)},
         {"reports", arr},
         {"pass", pass}};
  if (!V.note.empty()) j["note"] = V.note;
  emit_json(run, "conditions.json", j);

  std::string failed;
  for (const auto& r : reports)
    if (!r.pass) failed += (failed.empty() ? "" : ",") + r.condition;
  std::cout << "check-conditions: " << (pass ? "pass" : "FAIL " + failed) << " theta_min=" << g(t4.theta)
            << " theta_V3=" << g(t3.theta) << " theta=" << g(theta) << "\n";
  return pass ? 0 : 3;
}

int cmd_project(const Run& run) {
  const FunctionalContext ctx = build_context(run.cfg);
  const auto& s = run.cfg.solver;
  const double w2 = s.init_width * s.init_width;
  double amp = s.init_amplitude;
  auto bump = [&] {
    return RadialFunction::sample(ctx.grid_ptr(), [&](double r) { return amp * std::exp(-r * r / w2); });
  };
  RadialFunction u = bump();
  // the default bump is too small for Lambda; double until it is inside
  for (int k = 0; k < 60 && !lambda_membership(ctx, u).member; ++k) {
    amp *= 2.0;
    u = bump();
  }
  const FiberProjection p = project_to_M(ctx, u);

  std::vector<double> ts = log_space(1e-2, 1e2, 257);
  for (double& t : ts) t *= p.t_u;
  json j = to_json(p);
  j["command"] = "project";
  j["config"] = config_json(run.cfg);
  j["amplitude"] = amp;
  j["width"] = s.init_width;
  j["energy_before"] = energy(ctx, u);
  j["pohozaev_before"] = pohozaev(ctx, u);
  j["energy_projected"] = energy(ctx, p.projected);
  j["profile_csv"] = "profile.csv";
  j["fiber_csv"] = "fiber.csv";
  emit_json(run, "projection.json", j);
  emit_csv(run, "fiber.csv", fiber_csv(fiber_profile(ctx, u, ts)));
  emit_csv(run, "profile.csv", profile_csv(p.projected));
  std::cout << "project: t_u=" << g(p.t_u) << " zeta_max=" << g(p.zeta_max) << " residual=" << g(p.residual)
            << "\n";
  return 0;
}

SolveReport load_solution(const Run& run, const FunctionalContext& ctx) {
  const fs::path path = run.solution;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read solution " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io_error, path.string() + ": " + e.what());
  }
  if (!j.contains("grid") || !j.contains("profile_csv"))
    throw Error(ErrorKind::io_error, path.string() + ": missing grid or profile_csv");
  const json& gj = j["grid"];
  const RadialGrid& grid = ctx.grid();
  if (gj.value("N", -1) != grid.dim() || gj.value("n", -1L) != grid.size() ||
      gj.value("r_max", -1.0) != grid.r_max())
    throw Error(ErrorKind::grid_mismatch, "solution grid block differs from the configured grid");
  const fs::path csv = path.parent_path() / j["profile_csv"].get<std::string>();
  SolveReport rep{.route = j.value("route", std::string("external")),
                  .u_star = read_profile_csv(csv, ctx.grid_ptr())};
  rep.converged = j.value("converged", false);
  rep.iterations = j.value("iterations", 0);
  rep.scale = j.value("scale", 1.0);
  rep.multiplier = j.value("multiplier", 0.0);
  fill_diagnostics(ctx, rep);
  return rep;
}

int cmd_verify(const Run& run) {
  const FunctionalContext ctx = build_context(run.cfg);
  std::optional<SolveReport> sol;
  if (!run.solution.empty()) sol = load_solution(run, ctx);
  SuiteOptions opts;
  opts.bl = bl_options(run.cfg);
  const VerificationReport rep = run_suite(ctx, sol ? &*sol : nullptr, run.cfg.solver.seed, opts);
  json j = to_json(rep);
  j["command"] = "verify";
  j["config"] = config_json(run.cfg);
  emit_json(run, "verification.json", j);
  std::string failed;
  for (const auto& c : rep.checks)
    if (!c.pass) failed += (failed.empty() ? "" : ",") + c.name;
  std::cout << "verify: " << (rep.pass ? "pass" : "FAIL " + failed) << " checks=" << rep.checks.size()
            << " gamma1=" << g(rep.gamma1_hat) << " gamma2=" << g(rep.gamma2_hat) << " rho=" << g(rep.rho_hat)
            << "\n";
  return rep.pass ? 0 : 3;
}

int cmd_sweep(const Run& run) {
  const FunctionalContext ctx = build_context(run.cfg);
  const SweepReport rep = sweep_lambda(ctx, sweep_options(run.cfg));
  json j = to_json(rep);
  j["command"] = "sweep-lambda";
  j["config"] = config_json(run.cfg);
  j["sweep_csv"] = "sweep.csv";
  emit_json(run, "sweep.json", j);
  emit_csv(run, "sweep.csv", sweep_csv(rep));
  const bool pass = !rep.rows.empty() && rep.monotone && rep.all_margins_positive;
  std::cout << "sweep-lambda: " << (pass ? "pass" : "FAIL") << " lambda_bar=" << g(rep.lambda_bar)
            << " T=" << g(rep.T) << " rows=" << rep.rows.size() << " dropped=" << rep.dropped.size() << "\n";
  return pass ? 0 : 3;
}

int dispatch(const std::string& cmd, const Run& run) {
  if (cmd == "check-conditions") return cmd_check_conditions(run);
  if (cmd == "solve") {
    const FunctionalContext ctx = build_context(run.cfg);
    return write_solution(run, cmd, solve_fiber_descent(ctx, solve_options(run.cfg)));
  }
  if (cmd == "solve-limit") {
    const FunctionalContext ctx = build_context(run.cfg);
    return write_solution(run, cmd, solve_limit_BL(ctx, bl_options(run.cfg)));
  }
  if (cmd == "oracle-shoot") {
    const FunctionalContext ctx = build_context(run.cfg);
    return write_solution(run, cmd, shoot_oracle(ctx, shoot_options(run.cfg)));
  }
  if (cmd == "project") return cmd_project(run);
  if (cmd == "verify") return cmd_verify(run);
  if (cmd == "sweep-lambda") return cmd_sweep(run);
  throw Error(ErrorKind::config_error, "unknown command '" + cmd + "'");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Radial ground states of -Lap u + V u = f(u) on R^N"};
  std::string command, config_path, out_dir, solution;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  bool dump = false;

  app.add_option("command", command, "check-conditions | solve | solve-limit | oracle-shoot | project | verify | sweep-lambda")
      ->check(CLI::IsMember({"check-conditions", "solve", "solve-limit", "oracle-shoot", "project", "verify",
                             "sweep-lambda"}));
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--seed", seed, "Seed (overrides solver.seed)");
  app.add_option("--set", overrides, "section.key=value override, repeatable")->allow_extra_args(false);
  app.add_flag("--dump-config", dump, "Print the effective configuration and exit");
  app.add_option("--solution", solution, "solution.json to verify against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    Run run;
    if (!config_path.empty()) run.cfg = load_config(config_path);
    for (const auto& o : overrides) apply_override(run.cfg, o);
    if (seed) run.cfg.solver.seed = *seed;
    if (!out_dir.empty()) run.cfg.output.dir = out_dir;
    run.solution = solution;

    if (dump) {
      std::cout << dump_config(run.cfg);
      return 0;
    }
    if (command.empty()) throw Error(ErrorKind::config_error, "no command given (see --help)");

    run.out = run.cfg.output.dir;
    std::error_code ec;
    fs::create_directories(run.out, ec);
    if (ec) throw Error(ErrorKind::io_error, "cannot create " + run.out.string() + ": " + ec.message());
    write_atomic(run.out / "config.ini", dump_config(run.cfg));
    return dispatch(command, run);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace groundstate
