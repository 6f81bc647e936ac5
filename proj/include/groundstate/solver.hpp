#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groundstate/manifold.hpp"

namespace groundstate {

struct SolveOptions {
  int max_iters = 20000;
  double step = 1.0;
  double max_step = 1.0;
  double backtrack = 0.5;
  double grow = 1.2;
  /// Relative L2 PDE residual accepted at convergence. The three-point
  /// stencil against the discrete energy leaves an O(h^2) floor, so the
  /// default sits above it at the default grid.
  double gradient_tol = 1e-3;
  double pohozaev_tol = 1e-8;
  /// Stop once the relative energy change over `stall_window` iterations
  /// drops below this.
  double stall_tol = 1e-12;
  int stall_window = 10;
  double init_amplitude = 1.0;
  double init_width = 2.0;
  std::uint64_t seed = 0;
};

struct SolveReport {
  std::string route;  // fiber-descent | bl-constrained | shooting
  bool converged = false;
  RadialFunction u_star;
  double energy = 0.0;
  /// |P(u*)| / (|grad u*|^2 + |u*|^2).
  double pohozaev_residual = 0.0;
  /// |L(u*)|_2 / |u*|_2. The constrained route evaluates it on the
  /// undilated minimizer with the Laplacian rescaled by 1/t_w^2.
  double pde_residual = 0.0;
  int iterations = 0;
  double u_at_zero = 0.0;
  /// Route-specific scale: t_u of the last projection, t_w of the
  /// constrained minimizer, or the shooting cut radius.
  double scale = 1.0;
  /// Lagrange multiplier of the constrained route.
  double multiplier = 0.0;
  double seconds = 0.0;
};

/// Preconditioned energy descent with projection onto P = 0 after each step.
SolveReport solve_fiber_descent(const FunctionalContext& ctx, const SolveOptions& opts = {});

struct BLOptions {
  int max_iters = 20000;
  double step = 0.2;
  double lagrange_tol = 1e-10;
  double init_amplitude = 3.0;
  double init_width = 2.0;
};

/// Minimizes |grad w|^2 subject to int [lambda F(w) - V_inf w^2/2] = 1 and
/// rescales by t_w = sqrt((N-2)/(2N)) |grad w|. Works on the limit problem
/// of ctx whatever ctx.V() is.
SolveReport solve_limit_BL(const FunctionalContext& ctx, const BLOptions& opts = {});

/// Restores the constraint by amplitude; throws constraint-infeasible when
/// no amplitude of w reaches a positive constraint value.
RadialFunction restore_constraint(const FunctionalContext& ctx, const RadialFunction& w);

struct ShootOptions {
  double h_ode = 1e-3;
  double horizon = 30.0;
  double blowup = 10.0;
  double u0_lo = 1e-3;
  double u0_hi = 1e3;
  int scan_points = 121;
  double u0_tol = 1e-10;
};

enum class ShotOutcome { crossed, turned, blew_up, survived };

/// Radial ODE for -u'' - (N-1)/r u' + V_inf u = lambda f(u), u'(0) = 0.
ShotOutcome shoot_once(double u0, double V_inf, const NonlinearitySpec& f, double lambda, int dim,
                       const ShootOptions& opts);

/// Bisection on u(0) between crossing and turning trajectories; sampled on
/// ctx.grid() with an exponential tail past the point where the two
/// bracketing trajectories separate.
SolveReport shoot_oracle(const FunctionalContext& ctx, const ShootOptions& opts = {});

/// Shared post-processing: energy, Pohozaev and PDE residuals of u under ctx.
void fill_diagnostics(const FunctionalContext& ctx, SolveReport& report);

struct SweepOptions {
  std::vector<double> lambda_grid{0.993, 0.996, 1.0};
  std::string route = "bl";  // bl | shooting
  double T_start = 1.0;
  double T_growth = 1.25;
  double T_cap = 1e3;
  int path_points = 256;
  int s_points = 65;
  BLOptions bl;
  ShootOptions shoot;
};

struct SweepRow {
  double lambda = 0.0;
  double m_inf = 0.0;
  double c_bar = 0.0;
  double t_max = 0.0;  // maximizer of I_lambda along gamma_0
  double margin = 0.0;
};

struct SweepReport {
  double lambda_bar = 0.0;
  /// The two non-trivial candidates inside the max defining lambda_bar.
  double lambda_bar_potential = 0.0;
  double lambda_bar_gradient = 0.0;
  double T = 0.0;
  double x_bar = 0.0;  // |x_bar|
  double r_bar = 0.0;
  double zeta0 = 0.0;
  double m1_inf = 0.0;
  std::vector<SweepRow> rows;
  std::vector<double> dropped;  // grid values at or below lambda_bar
  bool monotone = true;
  bool all_margins_positive = true;
};

SweepReport sweep_lambda(const FunctionalContext& ctx, const SweepOptions& opts = {});

}  // namespace groundstate
