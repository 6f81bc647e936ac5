// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "groundstate/cli.hpp"
#include "groundstate/report_io.hpp"
#include "groundstate/verify.hpp"

using namespace groundstate;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;
const std::vector<double> kIipT{0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 4.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

FunctionalContext cubic(long n = 4096) {
  return FunctionalContext(make_grid(3, 30.0, n), constant_potential(1.0), power_nonlinearity(4.0));
}

FunctionalContext well(std::optional<double> theta = std::nullopt) {
  return FunctionalContext(make_grid(3, 30.0, 4096), decaying_well_potential(1.0, 0.2, 2.0),
                           power_nonlinearity(4.0), 1.0, theta);
}

struct Timed {
  SolveReport rep;
  double seconds;
};

Timed timed(const std::function<SolveReport()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep = fn();
  return {std::move(rep), seconds_since(t0)};
}

double pohozaev_ratio(const FunctionalContext& ctx, const RadialFunction& u) {
  const Parts p = parts(ctx, u);
  return std::abs(pohozaev_limit(ctx, p)) / (p.grad + p.l2);
}

std::vector<std::pair<std::string, std::function<SolveReport(const FunctionalContext&)>>> routes() {
  return {{"fiber-descent", [](const FunctionalContext& c) { return solve_fiber_descent(c); }},
          {"bl-constrained", [](const FunctionalContext& c) { return solve_limit_BL(c); }},
          {"shooting", [](const FunctionalContext& c) { return shoot_oracle(c); }}};
}

// Route results at the default grid, shared by criteria 1, 2 and 6.
std::vector<Timed>& default_runs() {
  static std::vector<Timed> runs = [] {
    std::vector<Timed> out;
    const auto ctx = cubic();
    for (auto& [name, fn] : routes()) out.push_back(timed([&] { return fn(ctx); }));
    return out;
  }();
  return runs;
}

Outcome criterion_pohozaev() {
  const auto fine = cubic(8192);
  const auto coarse = cubic();
  Outcome o{true, ""};
  auto& runs = default_runs();
  const auto rs = routes();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& [name, fn] = rs[k];
    const Timed& a = runs[k];
    const Timed b = timed([&] { return fn(fine); });
    const double ratio = pohozaev_ratio(coarse, a.rep.u_star);
    const double gain = a.rep.pde_residual / b.rep.pde_residual;
    const bool ok = ratio < 1e-3 && gain >= 3.0 && a.seconds < 60.0;
    o.pass = o.pass && ok;
    o.detail += fmt("%s%s |P|/|u|^2=%.2e res %.2e->%.2e (x%.2f) %.1fs", k ? "; " : "", name.c_str(), ratio,
                    a.rep.pde_residual, b.rep.pde_residual, gain, a.seconds);
  }
  return o;
}

Outcome criterion_agreement() {
  auto& runs = default_runs();
  const double mA = runs[0].rep.energy, mB = runs[1].rep.energy, mC = runs[2].rep.energy;
  const double ab = std::abs(mA - mB) / mB, ac = std::abs(mA - mC) / mC, bc = std::abs(mB - mC) / mC;
  return {ab < 1e-2 && ac < 1e-2 && bc < 1e-2,
          fmt("m_A=%.10f m_B=%.10f m_C=%.10f rel AB=%.1e AC=%.1e BC=%.1e", mA, mB, mC, ab, ac, bc)};
}

Outcome criterion_iip() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = check_iip(cubic(), 100, kIipT, kSeed);
  const auto lattice = SampleLattice::standard(30.0);
  const double theta_min = estimate_theta_V4(decaying_well_potential(1.0, 0.2, 2.0), 3, lattice.r).theta;
  const auto b = check_iip(well(theta_min), 100, kIipT, kSeed);
  const double secs = seconds_since(t0);
  std::string detail = fmt("(a) theta=0 worst=%.2e (b) theta=%.4f worst=%.2e", a.margin, theta_min, b.margin);
  if (!b.pass && b.witness.count("t"))
    detail += fmt(" at t=%.3g sample=%.0f", b.witness.at("t"), b.witness.count("sample") ? b.witness.at("sample") : -1.0);
  detail += fmt(" tol %.0e, %.1fs", a.tolerance, secs);
  return {a.pass && b.pass && secs < 30.0, detail};
}

Outcome criterion_g_hardy() {
  const auto g = check_g_positivity({3, 4, 5});
  const auto h = check_hardy(cubic(), 100, kSeed);
  return {g.pass && g.margin > 0.0 && h.pass,
          fmt("min g=%.3e over %ld samples; hardy worst=%.3e (tol %.0e)", g.margin, g.samples, h.margin, h.tolerance)};
}

Outcome criterion_fibers() {
  const auto scan = check_fibers(well(), 500, 64, kSeed);
  return {scan.uniqueness.pass && scan.fiber_max.pass,
          fmt("%ld samples, uniqueness worst=%g, fiber-max worst=%.2e (tol %.0e), rho_hat=%.3f",
              scan.uniqueness.samples, scan.uniqueness.margin, scan.fiber_max.margin, scan.fiber_max.tolerance,
              scan.rho_hat)};
}

Outcome criterion_domination() {
  const auto ctx = well();
  const SolveReport sol = solve_fiber_descent(ctx);
  const double m_inf = default_runs()[0].rep.energy;
  const auto mm = check_minimax(ctx, sol.energy, 100, kSeed);
  const bool dom = sol.energy <= m_inf + 1e-6;
  return {dom && mm.pass, fmt("m=%.8f m_inf=%.8f; minimax worst=%.3e (tol %.1e)", sol.energy, m_inf, mm.margin,
                              mm.tolerance)};
}

Outcome criterion_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepOptions o;
  o.lambda_grid = {0.993, 0.996, 1.0};
  const auto rep = sweep_lambda(well(), o);
  const double secs = seconds_since(t0);
  std::string rows;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.rows) {
    rows += fmt(" [%.3f: m=%.6f c=%.6f]", r.lambda, r.m_inf, r.c_bar);
    worst = std::min(worst, r.margin);
  }
  const bool ok = rep.rows.size() == o.lambda_grid.size() && rep.all_margins_positive && rep.monotone &&
                  rep.lambda_bar >= 0.5 && rep.lambda_bar < 1.0 && secs < 300.0;
  return {ok, fmt("lambda_bar=%.5f T=%.4f min margin=%.4f%s, %.1fs", rep.lambda_bar, rep.T, worst, rows.c_str(), secs)};
}

Outcome criterion_conditions() {
  const auto lattice = SampleLattice::standard(30.0);
  bool ok = true;
  double worst_rel = 0.0;
  std::string bad;
  for (double b : {0.05, 0.1, 0.15, 0.2, 0.24, 0.245, 0.255, 0.26, 0.3, 0.4}) {
    const auto V = decaying_well_potential(1.0, b, 2.0);
    const auto est = estimate_theta_V4(V, 3, lattice.r);
    const bool passes = est.pass && check_V4(V, 3, std::min(est.theta, 0.999999), lattice.r).pass;
    const double rel = std::abs(est.theta - 4.0 * b) / (4.0 * b);
    worst_rel = std::max(worst_rel, rel);
    if (passes != (b < 0.25) || rel > 0.01) {
      ok = false;
      bad += fmt(" b=%.3f", b);
    }
  }
  return {ok, fmt("V4 passes iff b < 0.25 on 10 values; worst |theta_min-4b|/4b=%.2e%s", worst_rel, bad.c_str())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "groundstate");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

Outcome criterion_determinism() {
  const fs::path root = fs::temp_directory_path() / "groundstate_acceptance";
  fs::remove_all(root);
  bool ok = true;
  int files = 0;
  for (const char* run : {"a", "b"}) {
    const fs::path d = root / run;
    ok = ok && cli({"solve", "--seed", "7", "--out", (d / "solve").string()}) == 0;
    ok = ok && cli({"verify", "--seed", "7", "--solution", (d / "solve" / "solution.json").string(), "--out",
                    (d / "verify").string()}) == 0;
  }
  for (const char* f : {"solve/solution.json", "solve/profile.csv", "verify/verification.json"}) {
    const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
    ok = ok && !a.empty() && a == b;
    ++files;
  }
  return {ok, fmt("%d output files byte-identical across two runs", files)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pohozaev identity per route", criterion_pohozaev},
      {"cross-route agreement", criterion_agreement},
      {"iip inequality", criterion_iip},
      {"g positivity and hardy", criterion_g_hardy},
      {"fiber uniqueness and max", criterion_fibers},
      {"domination and minimax", criterion_domination},
      {"lambda sweep", criterion_sweep},
      {"V4 threshold", criterion_conditions},
      {"determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
