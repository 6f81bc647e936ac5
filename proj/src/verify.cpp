#include "groundstate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "groundstate/sampling.hpp"

namespace groundstate {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Each scan draws from its own stream so that adding a check does not
// shift the samples of another.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{seed, salt};
  return std::mt19937_64(seq);
}

CheckResult make(const std::string& name, const std::string& statement, double tolerance) {
  CheckResult c;
  c.name = name;
  c.statement = statement;
  c.tolerance = tolerance;
  c.margin = inf;
  return c;
}

void finish(CheckResult& c) { c.pass = c.samples > 0 ? c.margin >= -c.tolerance : true; }

}  // namespace

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CheckResult check_g_positivity(const std::vector<int>& dims) {
  CheckResult c = make("g-positivity", "g(t) = 2 - N t^(N-2) + (N-2) t^N > 0 for t != 1", 0.0);
  for (int N : dims) {
    for (double t : log_space(1e-2, 1e1, 2001)) {
      if (std::abs(t - 1.0) <= 1e-3) continue;
      const double g = g_of_t(t, N);
      ++c.samples;
      if (g < c.margin) {
        c.margin = g;
        c.witness = {{"N", N}, {"t", t}};
      }
    }
  }
  c.pass = c.margin > 0.0;
  return c;
}

CheckResult check_hardy(const FunctionalContext& ctx, int samples, std::uint64_t seed) {
  CheckResult c = make("hardy", "|grad u|^2 - (N-2)^2/4 int u^2/r^2 >= 0", 1e-8);
  auto rng = stream(seed, 1);
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = random_bumps(ctx.grid_ptr(), rng);
    const double gap = hardy_gap(u);
    ++c.samples;
    if (gap < c.margin) {
      c.margin = gap;
      c.witness = {{"sample", k}};
    }
  }
  finish(c);
  return c;
}

CheckResult check_iip(const FunctionalContext& ctx, int samples, const std::vector<double>& ts, std::uint64_t seed) {
  CheckResult c = make("iip",
                       "I(u) - I(u_t) - (1-t^N)/N P(u) - (1-theta) g(t)/(2N) |grad u|^2 >= 0, "
                       "margin scaled by 1 + |u|_H1^2",
                       1e-6);
  c.note = "theta = " + std::to_string(ctx.theta());
  auto rng = stream(seed, 2);
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = random_bumps(ctx.grid_ptr(), rng);
    const double scale = 1.0 + h1_norm_sq(u);
    for (double t : ts) {
      const double gap = iip_gap(ctx, u, t) / scale;
      ++c.samples;
      if (gap < c.margin) {
        c.margin = gap;
        c.witness = {{"sample", k}, {"t", t}};
      }
    }
  }
  finish(c);
  return c;
}

CheckResult check_inclusion(const FunctionalContext& ctx, int samples, std::uint64_t seed) {
  CheckResult c = make("lambda-inclusion", "P(u) <= 0 or P_inf(u) <= 0 implies q(u) < 0", 0.0);
  auto rng = stream(seed, 3);
  long hits = 0;
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = random_bumps(ctx.grid_ptr(), rng);
    const Parts p = parts(ctx, u);
    if (pohozaev(ctx, p) > 0.0 && pohozaev_limit(ctx, p) > 0.0) continue;
    ++hits;
    ++c.samples;
    const double q = lambda_membership(ctx, u).q / p.l2;
    if (-q < c.margin) {
      c.margin = -q;
      c.witness = {{"sample", k}, {"q_over_l2", q}};
    }
  }
  c.note = std::to_string(hits) + " of " + std::to_string(samples) + " samples had a non-positive P";
  c.pass = c.samples == 0 || c.margin > 0.0;
  return c;
}

FiberScan check_fibers(const FunctionalContext& ctx, int samples, int fiber_points, std::uint64_t seed) {
  FiberScan out;
  out.uniqueness = make("fiber-uniqueness", "P(u_t) changes sign exactly once on [1e-3, 1e3]", 0.0);
  out.fiber_max = make("fiber-max", "I(u_{t_u}) >= I(u_t) on the fiber grid", 0.0);
  out.positive_level = make("positive-level", "I(u_{t_u}) > 0", 0.0);
  out.fiber_max.tolerance = 1e-10;
  out.rho_hat = inf;
  auto rng = stream(seed, 4);
  const std::vector<double> rel = log_space(0.1, 10.0, fiber_points);
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = random_in_lambda(ctx, rng);
    FiberProjection proj{1.0, u};
    try {
      proj = project_to_M(ctx, u);
    } catch (const Error& e) {
      ++out.uniqueness.samples;
      out.uniqueness.margin = -1.0;
      out.uniqueness.witness = {{"sample", k}};
      out.uniqueness.note = e.what();
      continue;
    }
    ++out.uniqueness.samples;
    if (out.uniqueness.margin == inf) out.uniqueness.margin = 0.0;

    std::vector<double> ts(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) ts[i] = proj.t_u * rel[i];
    const double scale = 1.0 + std::abs(proj.zeta_max);
    for (const FiberPoint& fp : fiber_profile(ctx, u, ts)) {
      ++out.fiber_max.samples;
      const double m = (proj.zeta_max - fp.zeta) / scale;
      if (m < out.fiber_max.margin) {
        out.fiber_max.margin = m;
        out.fiber_max.witness = {{"sample", k}, {"t", fp.t}, {"t_u", proj.t_u}};
      }
    }

    const Parts p = parts(ctx, proj.projected);
    const double I = energy(ctx, p);
    ++out.positive_level.samples;
    if (I < out.positive_level.margin) {
      out.positive_level.margin = I;
      out.positive_level.witness = {{"sample", k}};
    }
    out.rho_hat = std::min(out.rho_hat, std::sqrt(p.grad + p.l2));
  }
  finish(out.uniqueness);
  finish(out.fiber_max);
  out.positive_level.pass = out.positive_level.margin > 0.0;
  out.positive_level.note = "empirical manifold floor |u|_H1 >= " + std::to_string(out.rho_hat);
  return out;
}

NormScan check_norm_equivalence(const FunctionalContext& ctx, int samples, std::uint64_t seed) {
  NormScan out;
  const double N = ctx.dim();
  const double th = ctx.theta();
  const double lower = std::min((1.0 - th) * (N - 2.0), N * ctx.V_inf());
  const double upper = N - 2.0 + 2.0 * th + N * ctx.V_inf();
  out.check = make("norm-equivalence",
                   "min((1-theta)(N-2), N V_inf) <= [(N-2)|grad u|^2 + int (N V + r V') u^2] / |u|_H1^2 "
                   "<= N - 2 + 2 theta + N V_inf",
                   1e-8);
  out.gamma1 = inf;
  out.gamma2 = -inf;
  auto rng = stream(seed, 5);
  for (int k = 0; k < samples; ++k) {
    const double ratio = norm_equivalence_ratio(ctx, random_bumps(ctx.grid_ptr(), rng));
    ++out.check.samples;
    out.gamma1 = std::min(out.gamma1, ratio);
    out.gamma2 = std::max(out.gamma2, ratio);
    const double m = std::min(ratio - lower, upper - ratio);
    if (m < out.check.margin) {
      out.check.margin = m;
      out.check.witness = {{"sample", k}, {"ratio", ratio}};
    }
  }
  out.check.note = "bounds [" + std::to_string(lower) + ", " + std::to_string(upper) + "]";
  finish(out.check);
  return out;
}

CheckResult check_minimax(const FunctionalContext& ctx, double m_hat, int samples, std::uint64_t seed) {
  CheckResult c = make("minimax", "max_t I(u_t) >= m_hat for u in Lambda", 1e-4 * (1.0 + std::abs(m_hat)));
  c.note = "tolerance covers the O(h^2) gap between scaled and interpolated dilations";
  auto rng = stream(seed, 6);
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = random_in_lambda(ctx, rng);
    const double top = project_to_M(ctx, u).zeta_max;
    ++c.samples;
    if (top - m_hat < c.margin) {
      c.margin = top - m_hat;
      c.witness = {{"sample", k}, {"max_t_I", top}};
    }
  }
  finish(c);
  return c;
}

VerificationReport run_suite(const FunctionalContext& ctx, const SolveReport* solution, std::uint64_t seed,
                             const SuiteOptions& opts) {
  const SampleLattice lattice = SampleLattice::standard(ctx.grid().r_max());
  std::vector<ConditionReport> pre{check_V1V2(ctx.V(), lattice.r)};
  for (const auto& r : check_F(ctx.f(), ctx.dim(), ctx.V_inf()).reports) pre.push_back(r);
  std::string failed;
  for (const auto& r : pre)
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.condition;
  if (!failed.empty()) throw Error(ErrorKind::precondition_failed, "conditions not met: " + failed);

  VerificationReport rep;
  rep.seed = seed;
  rep.dim = ctx.dim();
  rep.r_max = ctx.grid().r_max();
  rep.n = static_cast<long>(ctx.grid().size());
  rep.theta = ctx.theta();
  rep.with_solution = solution != nullptr;

  rep.checks.push_back(check_g_positivity());
  rep.checks.push_back(check_hardy(ctx, opts.hardy_samples, seed));
  rep.checks.push_back(check_iip(ctx, opts.iip_samples, opts.iip_t, seed));
  rep.checks.push_back(check_inclusion(ctx, opts.inclusion_samples, seed));
  NormScan norms = check_norm_equivalence(ctx, opts.norm_samples, seed);
  rep.gamma1_hat = norms.gamma1;
  rep.gamma2_hat = norms.gamma2;
  rep.checks.push_back(norms.check);
  FiberScan fibers = check_fibers(ctx, opts.fiber_samples, opts.fiber_points, seed);
  rep.rho_hat = fibers.rho_hat;
  rep.checks.push_back(fibers.uniqueness);
  rep.checks.push_back(fibers.fiber_max);
  rep.checks.push_back(fibers.positive_level);

  if (solution) {
    const RadialFunction& u = solution->u_star;
    if (!u.grid().same_as(ctx.grid()))
      throw Error(ErrorKind::grid_mismatch, "solution grid differs from the configured grid");
    const Parts p = parts(ctx, u);

    CheckResult poh = make("solution-pohozaev", "|P(u*)| / |u*|_H1^2 small", 1e-3);
    poh.samples = 1;
    poh.margin = poh.tolerance - std::abs(pohozaev(ctx, p)) / (p.grad + p.l2);
    poh.pass = poh.margin >= 0.0;
    poh.note = "margin is tolerance minus residual";
    rep.checks.push_back(poh);

    CheckResult fmax = make("solution-fiber-max", "I(u*) >= I(u*_t) on the fiber grid", 1e-10);
    const double I0 = energy(ctx, p);
    for (const FiberPoint& fp : fiber_profile(ctx, u, log_space(0.1, 10.0, opts.fiber_points))) {
      ++fmax.samples;
      const double m = (energy_dilated(ctx, u, 1.0) - fp.zeta) / (1.0 + std::abs(I0));
      if (m < fmax.margin) {
        fmax.margin = m;
        fmax.witness = {{"t", fp.t}};
      }
    }
    finish(fmax);
    rep.checks.push_back(fmax);

    rep.checks.push_back(check_minimax(ctx, I0, opts.minimax_samples, seed));

    CheckResult attained = make("minimax-attained", "|max_t I(u*_t) - m_hat| small", 1e-6 * (1.0 + std::abs(I0)));
    attained.samples = 1;
    const double top = project_to_M(ctx, u).zeta_max;
    attained.margin = attained.tolerance - std::abs(top - I0);
    attained.pass = attained.margin >= 0.0;
    attained.witness = {{"max_t_I", top}, {"m_hat", I0}};
    rep.checks.push_back(attained);

    if (!ctx.V().is_constant()) {
      const SolveReport lim = solve_limit_BL(ctx, opts.bl);
      CheckResult dom = make("domination", "m_hat <= m_hat_inf", 1e-6);
      dom.samples = 1;
      dom.margin = lim.energy - I0;
      dom.witness = {{"m_hat", I0}, {"m_hat_inf", lim.energy}};
      finish(dom);
      rep.checks.push_back(dom);
    }
  }

  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.pass; });
  return rep;
}

}  // namespace groundstate
