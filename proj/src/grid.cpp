#include "groundstate/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "groundstate/model.hpp"

namespace groundstate {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_size: return "invalid-size";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::non_finite: return "non-finite";
    case ErrorKind::nonpositive_dilation: return "nonpositive-dilation";
    case ErrorKind::negative_t: return "negative-t";
    case ErrorKind::zero_function: return "zero-function";
    case ErrorKind::not_in_lambda: return "not-in-Lambda";
    case ErrorKind::no_sign_change: return "no-sign-change";
    case ErrorKind::multiple_sign_changes: return "multiple-sign-changes";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::left_lambda: return "left-Lambda";
    case ErrorKind::constraint_infeasible: return "constraint-infeasible";
    case ErrorKind::bracket_not_found: return "bracket-not-found";
    case ErrorKind::stiff_failure: return "stiff-failure";
    case ErrorKind::no_positivity_ball: return "no-positivity-ball";
    case ErrorKind::precondition_failed: return "precondition-failed";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

namespace {

// Composite Simpson weights on m = n-1 uniform intervals. An odd interval
// count closes with the 3/8 rule on the last three intervals.
Vector simpson_weights(Eigen::Index n, double h) {
  Vector s = Vector::Zero(n);
  const Eigen::Index m = n - 1;
  const Eigen::Index k = (m % 2 == 0) ? m : m - 3;
  for (Eigen::Index i = 0; i <= k; ++i) {
    if (i == 0 || i == k)
      s[i] += h / 3.0;
    else
      s[i] += (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  if (k != m) {
    const double c = 3.0 * h / 8.0;
    s[k] += c;
    s[k + 1] += 3.0 * c;
    s[k + 2] += 3.0 * c;
    s[k + 3] += c;
  }
  return s;
}

}  // namespace

RadialGrid::RadialGrid(int dim, double r_max, Eigen::Index n)
    : dim_(dim), r_max_(r_max), n_(n) {
  if (dim < 3) throw Error(ErrorKind::invalid_dimension, "N must be >= 3, got " + std::to_string(dim));
  if (n < 16) throw Error(ErrorKind::invalid_size, "need at least 16 nodes, got " + std::to_string(n));
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw Error(ErrorKind::invalid_size, "r_max must be positive and finite");

  h_ = r_max / static_cast<double>(n - 1);
  omega_ = std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
  r_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) r_[i] = static_cast<double>(i) * h_;
  r_[n - 1] = r_max;

  const Vector s = simpson_weights(n, h_);
  const double area = dim * omega_;  // surface area of the unit sphere
  w_.resize(n);
  w_inv_r2_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w_[i] = area * std::pow(r_[i], dim - 1) * s[i];
    // 0^0 = 1 keeps the r = 0 node for N = 3.
    w_inv_r2_[i] = area * std::pow(r_[i], dim - 3) * s[i];
  }
}

GridPtr make_grid(int dim, double r_max, Eigen::Index n) {
  return std::make_shared<const RadialGrid>(dim, r_max, n);
}

double sobolev_constant(int dim) {
  const double N = dim;
  return std::numbers::pi * N * (N - 2.0) *
         std::pow(std::tgamma(N / 2.0) / std::tgamma(N), 2.0 / N);
}

RadialFunction::RadialFunction(GridPtr grid, Vector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error(ErrorKind::grid_mismatch, "null grid");
  if (values_.size() != grid_->size())
    throw Error(ErrorKind::grid_mismatch, "value count does not match grid size");
  if (!values_.allFinite()) throw Error(ErrorKind::non_finite, "radial function has non-finite samples");
  values_[values_.size() - 1] = 0.0;
}

RadialFunction RadialFunction::zero(GridPtr grid) {
  const auto n = grid->size();
  return RadialFunction(std::move(grid), Vector::Zero(n));
}

void require_same_grid(const RadialFunction& a, const RadialFunction& b) {
  if (!a.grid().same_as(b.grid()))
    throw Error(ErrorKind::grid_mismatch, "radial functions live on different grids");
}

RadialFunction RadialFunction::operator+(const RadialFunction& other) const {
  require_same_grid(*this, other);
  return RadialFunction(grid_, values_ + other.values_);
}

RadialFunction RadialFunction::operator-(const RadialFunction& other) const {
  require_same_grid(*this, other);
  return RadialFunction(grid_, values_ - other.values_);
}

RadialFunction RadialFunction::operator*(double s) const {
  return RadialFunction(grid_, values_ * s);
}

double integrate(const RadialGrid& grid, const Vector& g) {
  if (g.size() != grid.size()) throw Error(ErrorKind::grid_mismatch, "integrand size mismatch");
  if (!g.allFinite()) throw Error(ErrorKind::non_finite, "integrand has non-finite samples");
  return grid.weights().dot(g);
}

double integrate(const RadialFunction& g) { return integrate(g.grid(), g.values()); }

double inner(const RadialFunction& u, const RadialFunction& v) {
  require_same_grid(u, v);
  return u.grid().weights().dot(u.values().cwiseProduct(v.values()));
}

Vector radial_derivative(const RadialGrid& grid, const Vector& u) {
  const Eigen::Index n = grid.size();
  const double h = grid.spacing();
  Vector d(n);
  d[0] = 0.0;
  // even reflection u(-r) = u(r) supplies the ghost node at i = 1
  d[1] = (8.0 * (u[2] - u[0]) - (u[3] - u[1])) / (12.0 * h);
  d.segment(2, n - 4) = (8.0 * (u.segment(3, n - 4) - u.segment(1, n - 4)) -
                         (u.segment(4, n - 4) - u.segment(0, n - 4))) /
                        (12.0 * h);
  d[n - 2] = (u[n - 1] - u[n - 3]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return d;
}

double grad_seminorm_sq(const RadialFunction& u) {
  const Vector d = radial_derivative(u.grid(), u.values());
  return u.grid().weights().dot(d.cwiseAbs2());
}

double l2_norm_sq(const RadialFunction& u) {
  return u.grid().weights().dot(u.values().cwiseAbs2());
}

double h1_norm_sq(const RadialFunction& u) { return grad_seminorm_sq(u) + l2_norm_sq(u); }

double inverse_square_moment(const RadialFunction& u) {
  return u.grid().weights_inv_r2().dot(u.values().cwiseAbs2());
}

RadialFunction dilate(const RadialFunction& u, double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::nonpositive_dilation, "dilation factor must be positive, got " + std::to_string(t));
  if (t == 1.0) return u;

  const RadialGrid& g = u.grid();
  const Eigen::Index n = g.size();
  const double h = g.spacing();
  const Vector& src = u.values();
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = g.nodes()[i] / t / h;
    if (x >= static_cast<double>(n - 1)) {
      v[i] = 0.0;
      continue;
    }
    const auto j = static_cast<Eigen::Index>(x);
    const double frac = x - static_cast<double>(j);
    v[i] = (1.0 - frac) * src[j] + frac * src[j + 1];
  }
  return RadialFunction(u.grid_ptr(), std::move(v));
}

Vector neg_laplacian(const RadialGrid& grid, const Vector& u) {
  const Eigen::Index n = grid.size();
  const double h = grid.spacing();
  const double h2 = h * h;
  const int N = grid.dim();
  const Vector& r = grid.nodes();
  Vector L(n);
  L[0] = -2.0 * N * (u[1] - u[0]) / h2;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    L[i] = -(u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2 -
           (N - 1) / r[i] * (u[i + 1] - u[i - 1]) / (2.0 * h);
  }
  L[n - 1] = 0.0;
  return L;
}

Vector solve_shifted_laplacian(const RadialGrid& grid, double shift, const Vector& rhs) {
  const Eigen::Index n = grid.size();
  const double h = grid.spacing();
  const double h2 = h * h;
  const int N = grid.dim();
  const Vector& r = grid.nodes();

  // Thomas algorithm on sub/diag/super diagonals.
  Vector sub = Vector::Zero(n), diag(n), sup = Vector::Zero(n);
  diag[0] = 2.0 * N / h2 + shift;
  sup[0] = -2.0 * N / h2;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    const double adv = (N - 1) / r[i] / (2.0 * h);
    sub[i] = -1.0 / h2 + adv;
    diag[i] = 2.0 / h2 + shift;
    sup[i] = -1.0 / h2 - adv;
  }
  diag[n - 1] = 1.0;

  Vector c(n), d(n);
  c[0] = sup[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    const double m = diag[i] - sub[i] * c[i - 1];
    c[i] = (i < n - 1) ? sup[i] / m : 0.0;
    const double b = (i < n - 1) ? rhs[i] : 0.0;
    d[i] = (b - sub[i] * d[i - 1]) / m;
  }
  Vector x(n);
  x[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

RadialFunction pde_residual(const RadialFunction& u, const PotentialSpec& V,
                            const NonlinearitySpec& f, double lambda) {
  const RadialGrid& g = u.grid();
  Vector L = neg_laplacian(g, u.values());
  const Vector& r = g.nodes();
  for (Eigen::Index i = 0; i < g.size() - 1; ++i)
    L[i] += V.value(r[i]) * u[i] - lambda * f.f(u[i]);
  L[g.size() - 1] = 0.0;
  return RadialFunction(u.grid_ptr(), std::move(L));
}

}  // namespace groundstate
