#pragma once

#include <utility>
#include <vector>

#include "groundstate/functionals.hpp"

namespace groundstate {

struct Membership {
  bool member = false;
  /// int [V_inf/2 u^2 - lambda F(u)]; membership needs q < -1e-10 |u|_2^2.
  double q = 0.0;
};

Membership lambda_membership(const FunctionalContext& ctx, const RadialFunction& u);

struct FiberPoint {
  double t = 0.0;
  double zeta = 0.0;  // I(u_t)
  double P = 0.0;     // P(u_t)
};

/// zeta and P along the dilation fiber, from the scaling forms.
std::vector<FiberPoint> fiber_profile(const FunctionalContext& ctx, const RadialFunction& u,
                                      const std::vector<double>& t_grid);

struct FiberProjection {
  double t_u = 1.0;
  RadialFunction projected;
  /// |P(projected)| evaluated on the interpolated function.
  double residual = 0.0;
  std::pair<double, double> bracket{1e-3, 1e3};
  int sign_changes = 0;
  /// I(u_{t_u}) from the scaling form, and its difference to I(projected).
  double zeta_max = 0.0;
  double interpolation_gap = 0.0;
};

struct ProjectOptions {
  double t_lo = 1e-3;
  double t_hi = 1e3;
  int scan_points = 64;
  double log_t_tol = 1e-12;
  /// Refine the root against P of the interpolated dilation.
  bool polish = true;
};

FiberProjection project_to_M(const FunctionalContext& ctx, const RadialFunction& u,
                             const ProjectOptions& opts = {});

}  // namespace groundstate
