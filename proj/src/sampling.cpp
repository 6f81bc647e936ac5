#include "groundstate/sampling.hpp"

#include <cmath>

namespace groundstate {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

bool strictly_inside(const FunctionalContext& ctx, const RadialFunction& u) {
  const Membership m = lambda_membership(ctx, u);
  return m.member && m.q < -0.05 * ctx.V_inf() * l2_norm_sq(u);
}

}  // namespace

RadialFunction random_bumps(const GridPtr& grid, std::mt19937_64& rng) {
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  double amp[3], width[3];
  for (int k = 0; k < count; ++k) {
    amp[k] = log_uniform(rng, 1e-2, 1e1);
    width[k] = log_uniform(rng, 0.5, 5.0);
  }
  return RadialFunction::sample(grid, [&](double r) {
    double s = 0.0;
    for (int k = 0; k < count; ++k) s += amp[k] * std::exp(-r * r / (width[k] * width[k]));
    return s;
  });
}

RadialFunction random_in_lambda(const FunctionalContext& ctx, std::mt19937_64& rng, int max_tries) {
  for (int k = 0; k < max_tries; ++k) {
    RadialFunction u = random_bumps(ctx.grid_ptr(), rng);
    if (strictly_inside(ctx, u)) return u;
  }
  RadialFunction u = random_bumps(ctx.grid_ptr(), rng);
  for (int k = 0; k < 60; ++k) {
    if (strictly_inside(ctx, u)) return u;
    u = u * 2.0;
  }
  throw Error(ErrorKind::not_in_lambda, "no random sample found inside Lambda");
}

}  // namespace groundstate
