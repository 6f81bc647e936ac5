#include <doctest.h>

#include <cmath>

#include "groundstate/solver.hpp"

using namespace groundstate;

namespace {

// Shooting value on the default grid (N = 3, r_max = 30, n = 4096), pinned
// from the first run of the oracle route.
constexpr double kOracleEnergy = 18.8972516558;
constexpr double kOracleU0 = 4.3373876802;

GridPtr grid3() {
  static GridPtr g = make_grid(3, 30.0, 4096);
  return g;
}

FunctionalContext cubic() { return FunctionalContext(grid3(), constant_potential(1.0), power_nonlinearity(4.0)); }

FunctionalContext well() {
  return FunctionalContext(grid3(), decaying_well_potential(1.0, 0.2, 2.0), power_nonlinearity(4.0));
}

const SolveReport& oracle() {
  static const SolveReport rep = shoot_oracle(cubic());
  return rep;
}

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

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("shooting oracle reproduces the pinned constants") {
  const auto& rep = oracle();
  CHECK(rep.route == "shooting");
  CHECK(rep.converged);
  CHECK(std::abs(rep.energy - kOracleEnergy) < 1e-9);
  CHECK(std::abs(rep.u_at_zero - kOracleU0) < 1e-9);
  CHECK(rep.pohozaev_residual < 1e-3);
  CHECK(rep.pde_residual < 1e-3);
}

TEST_CASE("shooting profile is positive and decreasing") {
  const auto& u = oracle().u_star;
  for (Eigen::Index i = 0; i + 1 < u.size(); ++i) {
    CHECK(u[i] >= 0.0);
    CHECK(u[i + 1] <= u[i]);
  }
  CHECK(u[u.size() - 2] < 1e-10);
  auto ctx = cubic();
  const Parts p = parts(ctx, u);
  CHECK(std::abs(pohozaev_limit(ctx, p)) / (p.grad + p.l2) < 1e-3);
}

TEST_CASE("single shots classify too low and too high starts") {
  const auto f = power_nonlinearity(4.0);
  ShootOptions o;
  CHECK(shoot_once(4.0, 1.0, f, 1.0, 3, o) == ShotOutcome::turned);
  CHECK(shoot_once(4.7, 1.0, f, 1.0, 3, o) == ShotOutcome::crossed);
}

TEST_CASE("shooting without a nonlinearity has no bracket") {
  FunctionalContext ctx(grid3(), constant_potential(1.0), zero_nonlinearity());
  CHECK(kind_of([&] { shoot_oracle(ctx); }) == ErrorKind::bracket_not_found);
}

TEST_CASE("fiber descent on the autonomous cubic") {
  auto rep = solve_fiber_descent(cubic());
  CHECK(rep.converged);
  CHECK(rep.route == "fiber-descent");
  CHECK(rep.pohozaev_residual < 1e-3);
  CHECK(rep.pde_residual < 1e-3);
  CHECK(rel(rep.energy, kOracleEnergy) < 1e-2);
  CHECK(std::abs(rep.u_at_zero - kOracleU0) < 1e-2 * kOracleU0);
  CHECK(rep.energy > 0.0);
}

TEST_CASE("fiber descent with a single iteration does not converge") {
  SolveOptions o;
  o.max_iters = 1;
  CHECK(kind_of([&] { solve_fiber_descent(cubic(), o); }) == ErrorKind::non_convergence);
}

TEST_CASE("fiber descent is deterministic") {
  SolveOptions o;
  o.seed = 5;
  auto a = solve_fiber_descent(cubic(), o);
  auto b = solve_fiber_descent(cubic(), o);
  CHECK(a.energy == b.energy);
  CHECK(a.iterations == b.iterations);
  CHECK((a.u_star.values() - b.u_star.values()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constrained route on the autonomous cubic") {
  auto rep = solve_limit_BL(cubic());
  CHECK(rep.converged);
  CHECK(rep.route == "bl-constrained");
  CHECK(rep.pohozaev_residual < 1e-3);
  CHECK(rep.pde_residual < 1e-2);
  CHECK(rel(rep.energy, kOracleEnergy) < 1e-2);
  // t_w = sqrt((N-2)/(2N)) |grad w| and the multiplier is positive
  CHECK(rep.scale > 0.0);
  CHECK(rep.multiplier > 0.0);
}

TEST_CASE("constrained route needs a reachable level") {
  FunctionalContext weak(grid3(), constant_potential(1.0), bounded_nonlinearity(0.1));
  CHECK(kind_of([&] { solve_limit_BL(weak); }) == ErrorKind::constraint_infeasible);
}

TEST_CASE("restore_constraint lands on the level set") {
  auto ctx = cubic();
  auto w = RadialFunction::sample(grid3(), [](double r) { return 2.0 * std::exp(-r * r); });
  auto v = restore_constraint(ctx, w);
  Vector G(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) G[i] = ctx.f().F(v[i]) - 0.5 * v[i] * v[i];
  CHECK(integrate(ctx.grid(), G) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a well lowers the ground energy") {
  auto ctx = well();
  auto rep = solve_fiber_descent(ctx);
  CHECK(rep.converged);
  CHECK(rep.pohozaev_residual < 1e-3);
  CHECK(rep.energy > 0.0);
  CHECK(rep.energy <= oracle().energy + 1e-6);
}

TEST_CASE("sweep preconditions") {
  CHECK(kind_of([&] { sweep_lambda(cubic()); }) == ErrorKind::no_positivity_ball);
  SweepOptions o;
  o.lambda_grid = {0.4, 1.0};
  CHECK(kind_of([&] { sweep_lambda(well(), o); }) == ErrorKind::config_error);
  o.lambda_grid = {0.99, 1.0};
  o.route = "newton";
  CHECK(kind_of([&] { sweep_lambda(well(), o); }) == ErrorKind::config_error);
}

TEST_CASE("sweep with the shooting route") {
  SweepOptions o;
  o.route = "shooting";
  auto rep = sweep_lambda(well(), o);
  CHECK(rep.lambda_bar >= 0.5);
  CHECK(rep.lambda_bar < 1.0);
  CHECK(rep.T > 0.0);
  CHECK(rep.zeta0 <= 0.25);
  REQUIRE_FALSE(rep.rows.empty());
  CHECK(rep.monotone);
  CHECK(rep.all_margins_positive);
  for (std::size_t k = 1; k < rep.rows.size(); ++k) CHECK(rep.rows[k].m_inf <= rep.rows[k - 1].m_inf + 1e-9);
  for (const auto& row : rep.rows) {
    CHECK(row.lambda > rep.lambda_bar);
    CHECK(row.margin == doctest::Approx(row.m_inf - row.c_bar));
  }
}
