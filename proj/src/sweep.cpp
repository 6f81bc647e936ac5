#include <algorithm>
#include <cmath>
#include <limits>

#include "groundstate/solver.hpp"

namespace groundstate {

namespace {

SolveReport limit_ground_state(const FunctionalContext& ctx, const SweepOptions& opts) {
  if (opts.route == "shooting") return shoot_oracle(ctx.autonomous(), opts.shoot);
  if (opts.route == "bl") return solve_limit_BL(ctx, opts.bl);
  throw Error(ErrorKind::config_error, "sweep route must be bl or shooting, got " + opts.route);
}

// Largest sampled radius of a ball around |x| = center on which V_inf - V > 0
// and u != 0; radial symmetry reduces the ball to the radial interval.
double positivity_radius(const FunctionalContext& ctx, const RadialFunction& u, double center) {
  const Vector& r = ctx.grid().nodes();
  const double h = ctx.grid().spacing();
  auto good = [&](Eigen::Index i) { return ctx.V_inf() - ctx.V_nodes()[i] > 0.0 && u[i] != 0.0; };
  const auto c = static_cast<Eigen::Index>(std::llround(center / h));
  if (!good(c)) return 0.0;
  Eigen::Index k = 0;
  for (;; ++k) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, c - k - 1), hi = c + k + 1;
    if (hi >= r.size() || !good(lo) || !good(hi)) break;
  }
  return static_cast<double>(k) * h;
}

double golden_max(const std::function<double(double)>& fn, double a, double b, int iters = 80) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int k = 0; k < iters; ++k) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = fn(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

SweepReport sweep_lambda(const FunctionalContext& ctx, const SweepOptions& opts) {
  if (opts.lambda_grid.empty()) throw Error(ErrorKind::config_error, "empty lambda grid");
  for (double l : opts.lambda_grid)
    if (!(l >= 0.5 && l <= 1.0)) throw Error(ErrorKind::config_error, "lambda grid values must lie in [1/2, 1]");
  if (ctx.V().is_constant() || (ctx.V_inf() - ctx.V_nodes().array()).maxCoeff() <= 0.0)
    throw Error(ErrorKind::no_positivity_ball, "V coincides with V_inf on every sampled ball");

  SweepReport rep;
  const FunctionalContext one = ctx.with_lambda(1.0);
  const SolveReport base = limit_ground_state(one, opts);
  const RadialFunction& u1 = base.u_star;
  rep.m1_inf = base.energy;

  const Parts p1 = parts(one, u1);
  const double N = ctx.dim();

  // T: I_lambda((u1)_T) < 0 on the whole grid.
  double T = opts.T_start;
  auto negative_everywhere = [&](double t) {
    return std::all_of(opts.lambda_grid.begin(), opts.lambda_grid.end(),
                       [&](double l) { return energy_dilated(ctx.with_lambda(l), u1, t) < 0.0; });
  };
  while (!negative_everywhere(T)) {
    T *= opts.T_growth;
    if (T > opts.T_cap) throw Error(ErrorKind::non_convergence, "no T below the cap makes I_lambda negative");
  }
  // Shrink back toward the threshold; lambda_bar degrades like T^N.
  if (T > opts.T_start) {
    double lo = T / opts.T_growth, hi = T;
    while (hi - lo > 1e-6 * hi) {
      const double mid = 0.5 * (lo + hi);
      (negative_everywhere(mid) ? hi : lo) = mid;
    }
    T = hi;
  }
  rep.T = T;

  // Ball (x_bar, r_bar) and zeta0.
  const Vector& r = ctx.grid().nodes();
  Eigen::Index argmin = 0;
  ctx.V_nodes().head(r.size() - 1).minCoeff(&argmin);
  rep.x_bar = ctx.V_nodes()[0] < ctx.V_inf() ? 0.0 : r[argmin];
  rep.r_bar = positivity_radius(ctx, u1, rep.x_bar);
  if (!(rep.r_bar > 0.0)) throw Error(ErrorKind::no_positivity_ball, "no ball with V < V_inf and u1 != 0");
  rep.zeta0 = std::min(3.0 * rep.r_bar / (8.0 * (1.0 + rep.x_bar)), 0.25);

  // lambda_bar.
  const double z = rep.zeta0;
  const double denom = std::pow(T, N) * p1.F;
  double min_gap = std::numeric_limits<double>::infinity();
  for (double s : log_space(1.0 - z, 1.0 + z, opts.s_points)) {
    double acc = 0.0;
    const Vector& w = ctx.grid().weights();
    for (Eigen::Index i = 0; i < r.size(); ++i) acc += w[i] * (ctx.V_inf() - ctx.V().value(s * r[i])) * u1[i] * u1[i];
    min_gap = std::min(min_gap, acc);
  }
  rep.lambda_bar_potential = 1.0 - std::pow(1.0 - z, N) * min_gap / denom;
  rep.lambda_bar_gradient =
      1.0 - std::min(g_of_t(1.0 - z, ctx.dim()), g_of_t(1.0 + z, ctx.dim())) * p1.grad / (N * denom);
  rep.lambda_bar = std::max({0.5, rep.lambda_bar_potential, rep.lambda_bar_gradient});

  double prev_m = std::numeric_limits<double>::infinity();
  std::vector<double> grid = opts.lambda_grid;
  std::sort(grid.begin(), grid.end());
  for (double l : grid) {
    if (l <= rep.lambda_bar) {
      rep.dropped.push_back(l);
      continue;
    }
    const FunctionalContext cl = ctx.with_lambda(l);
    SweepRow row;
    row.lambda = l;
    row.m_inf = l == 1.0 ? base.energy : limit_ground_state(cl, opts).energy;

    auto path = [&](double t) { return energy_dilated(cl, u1, t * T); };
    int best = 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= opts.path_points; ++k) {
      const double v = path(static_cast<double>(k) / opts.path_points);
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
    const double a = static_cast<double>(best - 1) / opts.path_points;
    const double b = std::min(1.0, static_cast<double>(best + 1) / opts.path_points);
    const double t_star = golden_max(path, std::max(a, 1e-12), b);
    row.t_max = t_star * T;
    row.c_bar = std::max(best_val, path(t_star));
    row.margin = row.m_inf - row.c_bar;
    if (row.m_inf > prev_m + 1e-9 * std::abs(prev_m)) rep.monotone = false;
    if (!(row.margin > 0.0)) rep.all_margins_positive = false;
    prev_m = row.m_inf;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace groundstate
