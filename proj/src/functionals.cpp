#include "groundstate/functionals.hpp"

#include <cmath>

namespace groundstate {

FunctionalContext::FunctionalContext(GridPtr grid, PotentialSpec V, NonlinearitySpec f, double lambda,
                                     std::optional<double> theta)
    : grid_(std::move(grid)), V_(std::move(V)), f_(std::move(f)), lambda_(lambda) {
  if (!grid_) throw Error(ErrorKind::grid_mismatch, "context needs a grid");
  if (!(lambda_ >= 0.0 && lambda_ <= 1.0))
    throw Error(ErrorKind::config_error, "lambda must lie in [0, 1]");
  if (theta)
    theta_ = *theta;
  else
    theta_ = resolve_theta(V_, grid_->dim(), grid_->r_max());
  const Vector& r = grid_->nodes();
  V_nodes_.resize(r.size());
  virial_nodes_.resize(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    V_nodes_[i] = V_.value(r[i]);
    virial_nodes_[i] = V_.virial(r[i]);
  }
  if (!V_nodes_.allFinite() || !virial_nodes_.allFinite())
    throw Error(ErrorKind::non_finite, "potential is not finite on the grid");
}

FunctionalContext FunctionalContext::autonomous() const {
  return FunctionalContext(grid_, constant_potential(V_.V_inf), f_, lambda_, 0.0);
}

FunctionalContext FunctionalContext::with_lambda(double lambda) const {
  FunctionalContext c = *this;
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::config_error, "lambda must lie in [0, 1]");
  c.lambda_ = lambda;
  return c;
}

Parts parts(const FunctionalContext& ctx, const RadialFunction& u) {
  if (!ctx.grid().same_as(u.grid())) throw Error(ErrorKind::grid_mismatch, "function not on context grid");
  const Vector& w = ctx.grid().weights();
  const Vector u2 = u.values().cwiseAbs2();
  Vector Fu(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) Fu[i] = ctx.f().F(u[i]);
  Parts p;
  p.grad = grad_seminorm_sq(u);
  p.l2 = w.dot(u2);
  p.pot = w.dot(ctx.V_nodes().cwiseProduct(u2));
  p.virial = w.dot(ctx.virial_nodes().cwiseProduct(u2));
  p.F = w.dot(Fu);
  return p;
}

double energy(const FunctionalContext& ctx, const Parts& p) {
  return 0.5 * (p.grad + p.pot) - ctx.lambda() * p.F;
}

double energy_limit(const FunctionalContext& ctx, const Parts& p) {
  return 0.5 * (p.grad + ctx.V_inf() * p.l2) - ctx.lambda() * p.F;
}

double pohozaev(const FunctionalContext& ctx, const Parts& p) {
  const double N = ctx.dim();
  return 0.5 * (N - 2.0) * p.grad + 0.5 * (N * p.pot + p.virial) - N * ctx.lambda() * p.F;
}

double pohozaev_limit(const FunctionalContext& ctx, const Parts& p) {
  const double N = ctx.dim();
  return 0.5 * (N - 2.0) * p.grad + 0.5 * N * ctx.V_inf() * p.l2 - N * ctx.lambda() * p.F;
}

double psi(const FunctionalContext& ctx, const Parts& p) {
  const double N = ctx.dim();
  return p.grad / N - p.virial / (2.0 * N);
}

double energy(const FunctionalContext& ctx, const RadialFunction& u) { return energy(ctx, parts(ctx, u)); }
double energy_limit(const FunctionalContext& ctx, const RadialFunction& u) {
  return energy_limit(ctx, parts(ctx, u));
}
double pohozaev(const FunctionalContext& ctx, const RadialFunction& u) { return pohozaev(ctx, parts(ctx, u)); }
double pohozaev_limit(const FunctionalContext& ctx, const RadialFunction& u) {
  return pohozaev_limit(ctx, parts(ctx, u));
}
double psi(const FunctionalContext& ctx, const RadialFunction& u) { return psi(ctx, parts(ctx, u)); }

namespace {

void require_positive(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::nonpositive_dilation, "dilation factor must be positive, got " + std::to_string(t));
}

// int V(t r) u^2 and int (t r) V'(t r) u^2.
std::pair<double, double> dilated_potential(const FunctionalContext& ctx, const RadialFunction& u, double t) {
  if (t == 1.0 || ctx.V().is_constant()) {
    const Vector u2 = u.values().cwiseAbs2();
    const Vector& w = ctx.grid().weights();
    return {w.dot(ctx.V_nodes().cwiseProduct(u2)), w.dot(ctx.virial_nodes().cwiseProduct(u2))};
  }
  const Vector& r = ctx.grid().nodes();
  const Vector& w = ctx.grid().weights();
  double pot = 0.0, vir = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double wu2 = w[i] * u[i] * u[i];
    if (wu2 == 0.0) continue;
    pot += wu2 * ctx.V().value(t * r[i]);
    vir += wu2 * ctx.V().virial(t * r[i]);
  }
  return {pot, vir};
}

}  // namespace

double energy_dilated(const FunctionalContext& ctx, const RadialFunction& u, double t) {
  require_positive(t);
  const Parts p = parts(ctx, u);
  const double N = ctx.dim();
  const auto [pot, vir] = dilated_potential(ctx, u, t);
  (void)vir;
  const double tN = std::pow(t, N);
  return 0.5 * std::pow(t, N - 2.0) * p.grad + 0.5 * tN * pot - ctx.lambda() * tN * p.F;
}

double pohozaev_dilated(const FunctionalContext& ctx, const RadialFunction& u, double t) {
  require_positive(t);
  const Parts p = parts(ctx, u);
  const double N = ctx.dim();
  const auto [pot, vir] = dilated_potential(ctx, u, t);
  const double tN = std::pow(t, N);
  return 0.5 * (N - 2.0) * std::pow(t, N - 2.0) * p.grad + 0.5 * tN * (N * pot + vir) -
         N * ctx.lambda() * tN * p.F;
}

double g_of_t(double t, int dim) {
  if (t < 0.0 || std::isnan(t)) throw Error(ErrorKind::negative_t, "g(t) needs t >= 0");
  return 2.0 - dim * std::pow(t, dim - 2) + (dim - 2) * std::pow(t, dim);
}

double iip_gap(const FunctionalContext& ctx, const RadialFunction& u, double t) {
  require_positive(t);
  if (t == 1.0) return 0.0;
  const Parts p = parts(ctx, u);
  const double N = ctx.dim();
  const double tN = std::pow(t, N);
  return energy(ctx, p) - energy_dilated(ctx, u, t) - (1.0 - tN) / N * pohozaev(ctx, p) -
         (1.0 - ctx.theta()) * g_of_t(t, ctx.dim()) / (2.0 * N) * p.grad;
}

double hardy_gap(const RadialFunction& u) {
  const double N = u.grid().dim();
  return grad_seminorm_sq(u) - 0.25 * (N - 2.0) * (N - 2.0) * inverse_square_moment(u);
}

double norm_equivalence_ratio(const FunctionalContext& ctx, const RadialFunction& u) {
  const Parts p = parts(ctx, u);
  const double N = ctx.dim();
  return ((N - 2.0) * p.grad + N * p.pot + p.virial) / (p.grad + p.l2);
}

}  // namespace groundstate
