#pragma once

#include <Eigen/Dense>

#include <memory>

#include "groundstate/error.hpp"

namespace groundstate {

struct PotentialSpec;
struct NonlinearitySpec;

using Vector = Eigen::VectorXd;

/// Uniform radial mesh r_i = i*h on [0, r_max] for radially symmetric
/// functions on R^N. Quadrature weights already contain the full-space
/// measure N*omega_N*r^{N-1} so that weights().dot(g) approximates the
/// integral of g(|x|) over R^N.
class RadialGrid {
 public:
  RadialGrid(int dim, double r_max, Eigen::Index n);

  int dim() const { return dim_; }
  double r_max() const { return r_max_; }
  Eigen::Index size() const { return n_; }
  double spacing() const { return h_; }
  /// Volume of the unit ball in R^N.
  double omega() const { return omega_; }
  const Vector& nodes() const { return r_; }
  const Vector& weights() const { return w_; }
  /// Weights for integrands of the form g(r)/r^2, finite at r = 0 for N >= 3
  /// when g(0) is finite (the r^{N-3} factor is folded in analytically).
  const Vector& weights_inv_r2() const { return w_inv_r2_; }

  bool same_as(const RadialGrid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && r_max_ == other.r_max_;
  }

 private:
  int dim_;
  double r_max_;
  Eigen::Index n_;
  double h_;
  double omega_;
  Vector r_;
  Vector w_;
  Vector w_inv_r2_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dim, double r_max, Eigen::Index n);

/// Best constant S of the Sobolev inequality S*|u|_{2*}^2 <= |grad u|_2^2.
double sobolev_constant(int dim);

/// Samples u(r_i) of a radial function; the last sample is the Dirichlet
/// truncation of the decay at infinity and is held at zero.
class RadialFunction {
 public:
  RadialFunction(GridPtr grid, Vector values);

  static RadialFunction zero(GridPtr grid);

  template <typename Fn>
  static RadialFunction sample(GridPtr grid, Fn&& fn) {
    Vector v(grid->size());
    const Vector& r = grid->nodes();
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = fn(r[i]);
    v[v.size() - 1] = 0.0;
    return RadialFunction(std::move(grid), std::move(v));
  }

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const Vector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  bool is_zero() const { return values_.cwiseAbs().maxCoeff() == 0.0; }

  RadialFunction operator+(const RadialFunction& other) const;
  RadialFunction operator-(const RadialFunction& other) const;
  RadialFunction operator*(double s) const;

 private:
  GridPtr grid_;
  Vector values_;
};

inline RadialFunction operator*(double s, const RadialFunction& u) { return u * s; }

void require_same_grid(const RadialFunction& a, const RadialFunction& b);

/// Composite Simpson value of the full-space integral of a radial integrand.
double integrate(const RadialFunction& g);
double integrate(const RadialGrid& grid, const Vector& g);

/// Quadrature inner product <u, v> over R^N.
double inner(const RadialFunction& u, const RadialFunction& v);

/// Radial derivative, fourth-order centered in the interior with the even
/// extension across r = 0; u'(0) = 0 and second order at the last two nodes.
Vector radial_derivative(const RadialGrid& grid, const Vector& u);

double grad_seminorm_sq(const RadialFunction& u);
double l2_norm_sq(const RadialFunction& u);
/// Full H^1 norm squared: |grad u|_2^2 + |u|_2^2.
double h1_norm_sq(const RadialFunction& u);
/// Integral of u^2/|x|^2 over R^N.
double inverse_square_moment(const RadialFunction& u);

/// u_t(x) = u(x/t) by linear interpolation, zero where r/t exceeds r_max.
RadialFunction dilate(const RadialFunction& u, double t);

/// Negative radial Laplacian -u'' - (N-1)/r u' with the r = 0 limit -N u''(0).
/// Second-order three-point stencil; the last entry is zero (Dirichlet row).
Vector neg_laplacian(const RadialGrid& grid, const Vector& u);

/// Solves (-Laplacian + shift) x = rhs with the Dirichlet row x[n-1] = 0.
/// Tridiagonal; used as the Sobolev-gradient preconditioner by the solvers.
Vector solve_shifted_laplacian(const RadialGrid& grid, double shift, const Vector& rhs);

/// Strong-form residual -u'' - (N-1)/r u' + V(r) u - lambda f(u) at every
/// node; zero at the Dirichlet node r_max.
RadialFunction pde_residual(const RadialFunction& u, const PotentialSpec& V,
                            const NonlinearitySpec& f, double lambda = 1.0);

}  // namespace groundstate
