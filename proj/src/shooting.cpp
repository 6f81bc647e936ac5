#include <chrono>
#include <cmath>
#include <vector>

#include "groundstate/solver.hpp"

namespace groundstate {

namespace {

struct Trajectory {
  double r0 = 0.0;
  double h = 0.0;
  std::vector<double> u, v;
  ShotOutcome outcome = ShotOutcome::survived;
};

Trajectory integrate(double u0, double V_inf, const NonlinearitySpec& f, double lambda, int dim,
                     const ShootOptions& o, bool store) {
  const double h = o.h_ode;
  const double N = dim;
  auto accel = [&](double r, double u, double v) { return -(N - 1.0) / r * v + V_inf * u - lambda * f.f(u); };

  Trajectory tr;
  tr.r0 = h;
  tr.h = h;
  const double a = (V_inf * u0 - lambda * f.f(u0)) / N;
  double r = h, u = u0 + 0.5 * a * h * h, v = a * h;
  const auto steps = static_cast<long>(std::ceil((o.horizon - h) / h));
  if (store) {
    tr.u.reserve(static_cast<std::size_t>(steps) + 1);
    tr.v.reserve(static_cast<std::size_t>(steps) + 1);
  }
  for (long k = 0;; ++k) {
    if (!std::isfinite(u) || !std::isfinite(v))
      throw Error(ErrorKind::stiff_failure, "trajectory from u(0) = " + std::to_string(u0) + " is not finite");
    if (store) {
      tr.u.push_back(u);
      tr.v.push_back(v);
    }
    if (u < 0.0) {
      tr.outcome = ShotOutcome::crossed;
      return tr;
    }
    if (std::abs(u) > o.blowup * u0) {
      tr.outcome = ShotOutcome::blew_up;
      return tr;
    }
    if (v > 0.0) {
      tr.outcome = ShotOutcome::turned;
      return tr;
    }
    if (k == steps) break;
    const double k1u = v, k1v = accel(r, u, v);
    const double k2u = v + 0.5 * h * k1v, k2v = accel(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
    const double k3u = v + 0.5 * h * k2v, k3v = accel(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
    const double k4u = v + h * k3v, k4v = accel(r + h, u + h * k3u, v + h * k3v);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r += h;
  }
  tr.outcome = ShotOutcome::survived;
  return tr;
}

bool too_high(ShotOutcome o) { return o == ShotOutcome::crossed; }

}  // namespace

ShotOutcome shoot_once(double u0, double V_inf, const NonlinearitySpec& f, double lambda, int dim,
                       const ShootOptions& opts) {
  return integrate(u0, V_inf, f, lambda, dim, opts, false).outcome;
}

SolveReport shoot_oracle(const FunctionalContext& ctx, const ShootOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const double V_inf = ctx.V_inf();
  const int N = ctx.dim();
  auto shot = [&](double u0) { return shoot_once(u0, V_inf, ctx.f(), ctx.lambda(), N, opts); };

  const std::vector<double> u0s = log_space(opts.u0_lo, opts.u0_hi, opts.scan_points);
  double lo = 0.0, hi = 0.0;
  bool found = false;
  ShotOutcome prev = shot(u0s[0]);
  for (std::size_t k = 1; k < u0s.size() && !found; ++k) {
    const ShotOutcome cur = shot(u0s[k]);
    if (!too_high(prev) && prev != ShotOutcome::survived && too_high(cur)) {
      lo = u0s[k - 1];
      hi = u0s[k];
      found = true;
    }
    prev = cur;
  }
  if (!found)
    throw Error(ErrorKind::bracket_not_found, "no u(0) in the scan separates turning from crossing shots");

  int iters = 0;
  while (hi - lo > opts.u0_tol) {
    const double mid = 0.5 * (lo + hi);
    const ShotOutcome o = shot(mid);
    if (o == ShotOutcome::survived) {
      lo = hi = mid;
      break;
    }
    (too_high(o) ? hi : lo) = mid;
    ++iters;
  }

  const Trajectory a = integrate(lo, V_inf, ctx.f(), ctx.lambda(), N, opts, true);
  const Trajectory b = integrate(hi, V_inf, ctx.f(), ctx.lambda(), N, opts, true);
  const std::size_t len = std::min(a.u.size(), b.u.size());
  std::size_t cut = len - 1;
  for (std::size_t k = 0; k < len; ++k) {
    const double avg = 0.5 * (a.u[k] + b.u[k]);
    if (std::abs(a.u[k] - b.u[k]) > 1e-3 * std::abs(avg) || avg <= 0.0) {
      cut = k > 0 ? k - 1 : 0;
      break;
    }
  }
  std::vector<double> u(cut + 1), v(cut + 1);
  for (std::size_t k = 0; k <= cut; ++k) {
    u[k] = 0.5 * (a.u[k] + b.u[k]);
    v[k] = 0.5 * (a.v[k] + b.v[k]);
  }
  const double h = opts.h_ode;
  const double r_c = a.r0 + static_cast<double>(cut) * h;
  const double u_c = u[cut];
  const double u0 = 0.5 * (lo + hi);
  const double decay = std::sqrt(std::max(V_inf, 0.0));

  auto profile = [&](double r) {
    if (r < a.r0) {
      const double acc = (V_inf * u0 - ctx.lambda() * ctx.f().f(u0)) / N;
      return u0 + 0.5 * acc * r * r;
    }
    if (r >= r_c) {
      if (decay > 0.0) return u_c * std::pow(r_c / r, 0.5 * (N - 1)) * std::exp(-decay * (r - r_c));
      return u_c * std::pow(r_c / r, N - 2.0);
    }
    const double x = (r - a.r0) / h;
    auto k = static_cast<std::size_t>(x);
    if (k >= cut) k = cut - 1;
    const double s = x - static_cast<double>(k);
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    return h00 * u[k] + h10 * h * v[k] + h01 * u[k + 1] + h11 * h * v[k + 1];
  };

  const FunctionalContext lim = ctx.autonomous();
  SolveReport rep{.route = "shooting", .converged = true, .u_star = RadialFunction::sample(ctx.grid_ptr(), profile)};
  rep.iterations = iters;
  rep.scale = r_c;
  fill_diagnostics(lim, rep);
  rep.u_at_zero = u0;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace groundstate
