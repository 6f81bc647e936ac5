#include "groundstate/manifold.hpp"

#include <cmath>

namespace groundstate {

Membership lambda_membership(const FunctionalContext& ctx, const RadialFunction& u) {
  if (!ctx.grid().same_as(u.grid())) throw Error(ErrorKind::grid_mismatch, "function not on context grid");
  if (u.is_zero()) throw Error(ErrorKind::zero_function, "membership of u = 0 is undefined");
  const Parts p = parts(ctx, u);
  Membership m;
  m.q = 0.5 * ctx.V_inf() * p.l2 - ctx.lambda() * p.F;
  m.member = m.q < -1e-10 * p.l2;
  return m;
}

std::vector<FiberPoint> fiber_profile(const FunctionalContext& ctx, const RadialFunction& u,
                                      const std::vector<double>& t_grid) {
  if (u.is_zero()) throw Error(ErrorKind::zero_function, "fiber of u = 0 is trivial");
  std::vector<FiberPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back({t, energy_dilated(ctx, u, t), pohozaev_dilated(ctx, u, t)});
  return out;
}

namespace {

// Bisection on log t for a sign change of fn between a (fn > 0) and b.
template <typename Fn>
double bisect_log(Fn&& fn, double a, double b, double tol) {
  double la = std::log(a), lb = std::log(b);
  const bool a_pos = fn(a) > 0.0;
  while (std::abs(lb - la) > tol) {
    const double lm = 0.5 * (la + lb);
    if ((fn(std::exp(lm)) > 0.0) == a_pos)
      la = lm;
    else
      lb = lm;
  }
  return std::exp(0.5 * (la + lb));
}

}  // namespace

FiberProjection project_to_M(const FunctionalContext& ctx, const RadialFunction& u, const ProjectOptions& opts) {
  const Membership mem = lambda_membership(ctx, u);
  if (!mem.member)
    throw Error(ErrorKind::not_in_lambda, "q(u) = " + std::to_string(mem.q) + " is not negative");

  const std::vector<double> ts = log_space(opts.t_lo, opts.t_hi, opts.scan_points);
  std::vector<double> P(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) P[k] = pohozaev_dilated(ctx, u, ts[k]);

  int changes = 0;
  std::size_t at = 0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if ((P[k - 1] > 0.0) != (P[k] > 0.0)) {
      ++changes;
      at = k;
    }
  }
  if (changes == 0) throw Error(ErrorKind::no_sign_change, "P(u_t) keeps one sign on the bracket");
  if (changes > 1)
    throw Error(ErrorKind::multiple_sign_changes,
                std::to_string(changes) + " sign changes of P(u_t); refine the grid");

  FiberProjection out{1.0, u, 0.0, {ts[at - 1], ts[at]}, changes, 0.0, 0.0};
  auto scaled = [&](double t) { return pohozaev_dilated(ctx, u, t); };
  double t_u = bisect_log(scaled, ts[at - 1], ts[at], opts.log_t_tol);
  out.zeta_max = energy_dilated(ctx, u, t_u);

  if (opts.polish) {
    // The interpolated dilation has its own discrete root within O(h^2).
    auto interp = [&](double t) { return pohozaev(ctx, dilate(u, t)); };
    for (double width : {1.01, 1.05, 1.2}) {
      const double lo = t_u / width, hi = t_u * width;
      if ((interp(lo) > 0.0) != (interp(hi) > 0.0)) {
        t_u = bisect_log(interp, lo, hi, opts.log_t_tol);
        break;
      }
    }
  }
  out.t_u = t_u;
  out.projected = dilate(u, t_u);
  const Parts p = parts(ctx, out.projected);
  out.residual = std::abs(pohozaev(ctx, p));
  out.interpolation_gap = energy(ctx, p) - out.zeta_max;
  return out;
}

}  // namespace groundstate
