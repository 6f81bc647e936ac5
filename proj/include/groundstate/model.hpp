#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace groundstate {

using ScalarFn = std::function<double(double)>;
using ParamMap = std::map<std::string, double>;

/// Radial potential V(|x|) with its radial derivative. The virial term
/// grad V(x).x equals r*V'(r) for radial V.
struct PotentialSpec {
  std::string family;
  ParamMap params;
  ScalarFn V;
  ScalarFn dV;
  double V_inf = 0.0;
  /// Declared decay parameter; when unset the context estimates one.
  std::optional<double> theta;
  /// Free-form note carried into reports.
  std::string note;

  double value(double r) const { return V(r); }
  double derivative(double r) const { return dV(r); }
  double virial(double r) const { return r * dV(r); }
  bool is_constant() const { return family == "constant"; }
};

/// Decaying profile h used by the perturbed family V = V_inf - eps*h.
struct ProfileSpec {
  std::string family;
  ScalarFn h;
  ScalarFn dh;
};

struct NonlinearitySpec {
  std::string family;
  ParamMap params;
  ScalarFn f;
  /// Antiderivative with F(0) = 0.
  ScalarFn F;
};

PotentialSpec constant_potential(double V_inf);
/// V = a - b/(1 + r^alpha).
PotentialSpec decaying_well_potential(double a, double b, double alpha);
/// V = V1 - A/(1 + r^2), the bounded counterpart of a V1 - A/r^3 tail.
PotentialSpec lorentzian_well_potential(double V1, double A);
/// V = a + c*exp(-r).
PotentialSpec exponential_potential(double a, double c);
/// V = V_inf - eps*h(r).
PotentialSpec perturbed_potential(double V_inf, double eps, const ProfileSpec& h);
/// Piecewise-linear V through (r_k, V_k); V' by differencing the table.
/// V_inf is the last tabulated value.
PotentialSpec tabulated_potential(std::vector<double> r, std::vector<double> v);

ProfileSpec inverse_square_profile();  // 1/(1+r^2)
ProfileSpec gaussian_profile();        // exp(-r^2)
ProfileSpec zero_profile();
ProfileSpec negative_exponential_profile();  // -exp(-r)

/// f(t) = c |t|^{p-2} t.
NonlinearitySpec power_nonlinearity(double p, double c = 1.0);
/// f(t) = 2c t^3 exp(-t^2), F(t) = c (1 - (1+t^2) exp(-t^2)); F is bounded by c.
NonlinearitySpec bounded_nonlinearity(double c);
NonlinearitySpec linear_nonlinearity(double c);
NonlinearitySpec zero_nonlinearity();

/// Critical Sobolev exponent 2N/(N-2).
double critical_exponent(int dim);

struct ConditionReport {
  std::string condition;
  bool pass = false;
  /// Parameter point of the worst margin, e.g. {"r": 1.3} or {"t": 2, "r": 0.5}.
  ParamMap witness;
  /// Worst signed margin; negative beyond the tolerance means violated.
  double margin = 0.0;
  long samples = 0;
  double tolerance = 0.0;
  std::string note;
};

bool all_pass(const std::vector<ConditionReport>& reports);

std::vector<double> log_space(double lo, double hi, int count);

/// Default lattice: 128 log-spaced t in [1e-2, 1e2] x 256 log-spaced r in
/// [1e-3, r_max].
struct SampleLattice {
  std::vector<double> t;
  std::vector<double> r;

  static SampleLattice standard(double r_max);
};

ConditionReport check_V1V2(const PotentialSpec& V, const std::vector<double>& radii);

struct ThetaEstimate {
  double theta = 0.0;
  double witness_r = 0.0;
  bool pass = true;
};

/// Smallest theta for which r*V'(r) <= (N-2)^2 theta/(2 r^2) on the samples.
ThetaEstimate estimate_theta_V4(const PotentialSpec& V, int dim, const std::vector<double>& radii);

ConditionReport check_V4(const PotentialSpec& V, int dim, double theta,
                         const std::vector<double>& radii);

/// Sign condition in t >< 1 together with the integrated form
///   N t^N [V(r) - V(tr)] + (t^N - 1) r V'(r) >= -(N-2)^2 theta g(t) / (4 r^2).
ConditionReport check_V3(const PotentialSpec& V, int dim, double theta, const SampleLattice& lattice);

/// Smallest theta in [0, 1) passing check_V3 on the lattice (bisection; the
/// condition is monotone in theta). Returns theta = 1, pass = false if none.
ThetaEstimate estimate_theta_V3(const PotentialSpec& V, int dim, const SampleLattice& lattice);

/// Declared theta if present, otherwise max of the (V4) and (V3) estimates.
double resolve_theta(const PotentialSpec& V, int dim, double r_max);

/// Two-sided bound
///   -(N-2)^3 theta/(4r^2) + N V_inf <= N V + r V' <= N V_inf + (N-2)^2 theta/(2r^2).
ConditionReport check_virial_bounds(const PotentialSpec& V, int dim, double theta,
                               const std::vector<double>& radii);

struct NonlinearityCheck {
  std::vector<ConditionReport> reports;  // F1, F2, F3, F-antiderivative
  double C0 = 0.0;
  std::optional<double> s0;

  bool pass() const { return all_pass(reports); }
};

NonlinearityCheck check_F(const NonlinearitySpec& f, int dim, double V_inf);

/// (H1) h >= 0 with decay toward r_max; (H2) sup of -r^3 h'(r) below cap.
std::vector<ConditionReport> check_H(const ProfileSpec& h, int dim, const std::vector<double>& radii,
                                     double cap = 1e6);

}  // namespace groundstate
