#pragma once

#include "groundstate/grid.hpp"
#include "groundstate/model.hpp"

namespace groundstate {

/// Grid, potential, nonlinearity and the weight lambda of I_lambda. V and
/// r*V' are cached on the nodes; theta is resolved once at construction.
class FunctionalContext {
 public:
  FunctionalContext(GridPtr grid, PotentialSpec V, NonlinearitySpec f, double lambda = 1.0,
                    std::optional<double> theta = std::nullopt);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const PotentialSpec& V() const { return V_; }
  const NonlinearitySpec& f() const { return f_; }
  double lambda() const { return lambda_; }
  double theta() const { return theta_; }
  int dim() const { return grid_->dim(); }
  double V_inf() const { return V_.V_inf; }

  const Vector& V_nodes() const { return V_nodes_; }
  const Vector& virial_nodes() const { return virial_nodes_; }

  /// Same grid and f with V replaced by the constant V_inf (theta = 0).
  FunctionalContext autonomous() const;
  FunctionalContext with_lambda(double lambda) const;

 private:
  GridPtr grid_;
  PotentialSpec V_;
  NonlinearitySpec f_;
  double lambda_;
  double theta_;
  Vector V_nodes_;
  Vector virial_nodes_;
};

/// Shared quadrature pieces; every functional below is algebra on these.
struct Parts {
  double grad = 0.0;     // |grad u|_2^2
  double l2 = 0.0;       // |u|_2^2
  double pot = 0.0;      // int V u^2
  double virial = 0.0;   // int r V'(r) u^2
  double F = 0.0;        // int F(u)
};

Parts parts(const FunctionalContext& ctx, const RadialFunction& u);

double energy(const FunctionalContext& ctx, const RadialFunction& u);
double energy_limit(const FunctionalContext& ctx, const RadialFunction& u);
double pohozaev(const FunctionalContext& ctx, const RadialFunction& u);
double pohozaev_limit(const FunctionalContext& ctx, const RadialFunction& u);
double psi(const FunctionalContext& ctx, const RadialFunction& u);

double energy(const FunctionalContext& ctx, const Parts& p);
double energy_limit(const FunctionalContext& ctx, const Parts& p);
double pohozaev(const FunctionalContext& ctx, const Parts& p);
double pohozaev_limit(const FunctionalContext& ctx, const Parts& p);
double psi(const FunctionalContext& ctx, const Parts& p);

/// I(u_t) and P(u_t) from the change of variables x -> t x, with no
/// interpolation:
///   I(u_t) = t^{N-2}/2 |grad u|^2 + t^N/2 int V(t r) u^2 - lambda t^N int F(u)
///   P(u_t) = (N-2)/2 t^{N-2} |grad u|^2 + t^N/2 int [N V + r V'](t r) u^2
///            - N lambda t^N int F(u)
/// so that d/dt I(u_t) = P(u_t)/t holds exactly.
double energy_dilated(const FunctionalContext& ctx, const RadialFunction& u, double t);
double pohozaev_dilated(const FunctionalContext& ctx, const RadialFunction& u, double t);

/// 2 - N t^{N-2} + (N-2) t^N.
double g_of_t(double t, int dim);

/// I(u) - I(u_t) - (1-t^N)/N P(u) - (1-theta) g(t)/(2N) |grad u|^2.
double iip_gap(const FunctionalContext& ctx, const RadialFunction& u, double t);

/// |grad u|^2 - (N-2)^2/4 int u^2/r^2.
double hardy_gap(const RadialFunction& u);

/// [(N-2)|grad u|^2 + int (N V + r V') u^2] / (|grad u|^2 + |u|^2).
double norm_equivalence_ratio(const FunctionalContext& ctx, const RadialFunction& u);

}  // namespace groundstate
