#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "groundstate/functionals.hpp"
#include "groundstate/sampling.hpp"

using namespace groundstate;
using std::numbers::pi;

namespace {

GridPtr grid3() {
  static GridPtr g = make_grid(3, 30.0, 4096);
  return g;
}

FunctionalContext cubic() { return FunctionalContext(grid3(), constant_potential(1.0), power_nonlinearity(4.0)); }

FunctionalContext well(double b = 0.2) {
  return FunctionalContext(grid3(), decaying_well_potential(1.0, b, 2.0), power_nonlinearity(4.0));
}

RadialFunction gauss(double A, double a = 1.0) {
  return RadialFunction::sample(grid3(), [=](double r) { return A * std::exp(-a * r * r); });
}

// widths small enough that u(r/4) still decays inside r_max
RadialFunction compact_bump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> la(std::log(0.1), std::log(5.0)), w(0.5, 1.5);
  const double A = std::exp(la(rng)), s = w(rng);
  return gauss(A, 1.0 / (s * s));
}

}  // namespace

TEST_CASE("zero function gives zero everywhere") {
  auto ctx = well();
  auto z = RadialFunction::zero(grid3());
  CHECK(energy(ctx, z) == 0.0);
  CHECK(energy_limit(ctx, z) == 0.0);
  CHECK(pohozaev(ctx, z) == 0.0);
  CHECK(pohozaev_limit(ctx, z) == 0.0);
  CHECK(psi(ctx, z) == 0.0);
  CHECK(hardy_gap(z) == 0.0);
  for (double t : {0.5, 2.0}) CHECK(iip_gap(ctx, z, t) == 0.0);
}

TEST_CASE("energy_limit of a gaussian against its moments") {
  // u = A e^{-r^2}: |u|^2 = A^2 (pi/2)^{3/2}, |grad u|^2 = 3 A^2 (pi/2)^{3/2},
  // int u^4/4 = A^4/4 (pi/4)^{3/2}
  auto ctx = cubic();
  for (double A : {0.5, 1.0, 3.0}) {
    const double l2 = A * A * std::pow(pi / 2.0, 1.5);
    const double expected = 0.5 * (3.0 * l2 + l2) - A * A * A * A / 4.0 * std::pow(pi / 4.0, 1.5);
    CHECK(std::abs(energy_limit(ctx, gauss(A)) - expected) < 1e-6 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("constant potential: energy and pohozaev agree with their limits") {
  auto ctx = cubic();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    auto u = random_bumps(grid3(), rng);
    CHECK(energy(ctx, u) == doctest::Approx(energy_limit(ctx, u)).epsilon(1e-14));
    CHECK(pohozaev(ctx, u) == doctest::Approx(pohozaev_limit(ctx, u)).epsilon(1e-14));
    CHECK(psi(ctx, u) == doctest::Approx(grad_seminorm_sq(u) / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("limit minus energy is half the well depth integral") {
  auto ctx = well();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    auto u = random_bumps(grid3(), rng);
    const double gap = energy_limit(ctx, u) - energy(ctx, u);
    Vector w = (ctx.V_inf() - ctx.V_nodes().array()) * u.values().array().square();
    CHECK(gap >= 0.0);
    CHECK(gap == doctest::Approx(0.5 * integrate(ctx.grid(), w)).epsilon(1e-12));
  }
}

TEST_CASE("psi = I - P/N to round-off") {
  auto ctx = well();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    auto u = random_bumps(grid3(), rng);
    const double lhs = psi(ctx, u);
    const double rhs = energy(ctx, u) - pohozaev(ctx, u) / 3.0;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(lhs) + std::abs(energy(ctx, u))));
  }
}

TEST_CASE("psi lower bound on 100 random functions") {
  auto ctx = well();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    auto u = random_bumps(grid3(), rng);
    CHECK(psi(ctx, u) >= (1.0 - ctx.theta()) / 3.0 * grad_seminorm_sq(u) - 1e-10);
  }
}

TEST_CASE("scaling forms match the interpolated dilation") {
  auto ctx = well();
  std::mt19937_64 rng(13);
  for (int k = 0; k < 10; ++k) {
    auto u = compact_bump(rng);
    for (double t : {0.25, 0.5, 0.8, 1.0, 1.25, 2.0, 4.0}) {
      auto ut = dilate(u, t);
      const double Ie = energy_dilated(ctx, u, t);
      const double Pe = pohozaev_dilated(ctx, u, t);
      const double scale = 1.0 + h1_norm_sq(ut) + std::abs(parts(ctx, ut).F);
      CHECK(std::abs(energy(ctx, ut) - Ie) < 2e-3 * scale);
      CHECK(std::abs(pohozaev(ctx, ut) - Pe) < 2e-3 * scale);
    }
    CHECK(energy_dilated(ctx, u, 1.0) == doctest::Approx(energy(ctx, u)).epsilon(1e-13));
    CHECK(pohozaev_dilated(ctx, u, 1.0) == doctest::Approx(pohozaev(ctx, u)).epsilon(1e-13));
  }
}

TEST_CASE("d/dt I(u_t) = P(u_t)/t for the scaling forms") {
  auto ctx = well();
  auto u = gauss(3.0, 0.5);
  for (double t : {0.3, 0.9, 1.7, 3.0}) {
    const double d = 1e-5 * t;
    const double fd = (energy_dilated(ctx, u, t + d) - energy_dilated(ctx, u, t - d)) / (2.0 * d);
    CHECK(fd == doctest::Approx(pohozaev_dilated(ctx, u, t) / t).epsilon(1e-6));
  }
}

TEST_CASE("g(t)") {
  CHECK(g_of_t(1.0, 3) == 0.0);
  CHECK(g_of_t(0.0, 3) == 2.0);
  CHECK(g_of_t(2.0, 3) == doctest::Approx(4.0));
  CHECK(g_of_t(0.0, 5) == 2.0);
  for (int N : {3, 4, 5})
    for (double t : log_space(1e-2, 10.0, 400))
      if (std::abs(t - 1.0) > 1e-3) CHECK(g_of_t(t, N) > 0.0);
  try {
    g_of_t(-0.5, 3);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::negative_t);
  }
}

TEST_CASE("iip gap") {
  auto ctx = cubic();
  auto u = gauss(2.0);
  CHECK(iip_gap(ctx, u, 1.0) == 0.0);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    auto v = random_bumps(grid3(), rng);
    for (double t : {0.5, 2.0}) CHECK(iip_gap(ctx, v, t) >= -1e-8);
  }
}

TEST_CASE("iip gap with a declared theta below what the potential needs") {
  FunctionalContext bad(grid3(), decaying_well_potential(1.0, 0.2, 2.0), power_nonlinearity(4.0), 1.0, 0.0);
  std::mt19937_64 rng(19);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    auto v = random_bumps(grid3(), rng);
    for (double t : {0.25, 0.5, 2.0, 4.0}) worst = std::min(worst, iip_gap(bad, v, t) / (1.0 + h1_norm_sq(v)));
  }
  CHECK(worst < -1e-6);
}

TEST_CASE("hardy gap") {
  auto u = RadialFunction::sample(grid3(), [](double r) { return std::exp(-r); });
  CHECK(hardy_gap(u) == doctest::Approx(pi / 2.0).epsilon(1e-3));
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) CHECK(hardy_gap(random_bumps(grid3(), rng)) >= -1e-8);
}

TEST_CASE("pde residual is the discrete energy gradient") {
  auto ctx = well();
  std::mt19937_64 rng(29);
  for (int k = 0; k < 10; ++k) {
    auto u = random_bumps(grid3(), rng);
    auto phi = random_bumps(grid3(), rng);
    const double eps = 1e-4;
    const double fd = (energy(ctx, u + eps * phi) - energy(ctx, u - eps * phi)) / (2.0 * eps);
    const double pair = inner(pde_residual(u, ctx.V(), ctx.f(), ctx.lambda()), phi);
    CHECK(std::abs(fd - pair) <= 1e-4 * std::max(std::abs(fd), std::abs(pair)) + 1e-10);
  }
}

TEST_CASE("norm equivalence ratio is bounded") {
  auto ctx = well();
  const double th = ctx.theta();
  const double lo = std::min((1.0 - th) * 1.0, 3.0 * ctx.V_inf());
  const double hi = 1.0 + 2.0 * th + 3.0 * ctx.V_inf();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const double q = norm_equivalence_ratio(ctx, random_bumps(grid3(), rng));
    CHECK(q >= lo - 1e-8);
    CHECK(q <= hi + 1e-8);
  }
}

TEST_CASE("context variants") {
  auto ctx = well();
  CHECK(ctx.theta() > 0.8);
  auto a = ctx.autonomous();
  CHECK(a.V().is_constant());
  CHECK(a.theta() == 0.0);
  CHECK(a.V_inf() == ctx.V_inf());
  auto l = ctx.with_lambda(0.9);
  CHECK(l.lambda() == 0.9);
  auto u = gauss(2.0);
  CHECK(energy(l, u) > energy(ctx, u));
  try {
    ctx.with_lambda(1.5);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config_error);
  }
}
