#include "groundstate/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "groundstate/error.hpp"

namespace groundstate {

PotentialSpec constant_potential(double V_inf) {
  PotentialSpec p;
  p.family = "constant";
  p.params = {{"V_inf", V_inf}};
  p.V = [V_inf](double) { return V_inf; };
  p.dV = [](double) { return 0.0; };
  p.V_inf = V_inf;
  return p;
}

PotentialSpec decaying_well_potential(double a, double b, double alpha) {
  PotentialSpec p;
  p.family = "decaying-well";
  p.params = {{"a", a}, {"b", b}, {"alpha", alpha}};
  p.V = [=](double r) { return a - b / (1.0 + std::pow(r, alpha)); };
  p.dV = [=](double r) {
    if (r == 0.0) return alpha > 1.0 ? 0.0 : (alpha == 1.0 ? b : std::numeric_limits<double>::infinity());
    const double q = 1.0 + std::pow(r, alpha);
    return b * alpha * std::pow(r, alpha - 1.0) / (q * q);
  };
  p.V_inf = a;
  return p;
}

PotentialSpec lorentzian_well_potential(double V1, double A) {
  PotentialSpec p = decaying_well_potential(V1, A, 2.0);
  p.family = "lorentzian-well";
  p.params = {{"V1", V1}, {"A", A}};
  p.note =
      "V1 - A/(1+r^2); the singular A/r^3 variant is not supported; "
      "admissibility of A is decided by the V3 lattice check";
  return p;
}

PotentialSpec exponential_potential(double a, double c) {
  PotentialSpec p;
  p.family = "exponential";
  p.params = {{"a", a}, {"c", c}};
  p.V = [=](double r) { return a + c * std::exp(-r); };
  p.dV = [=](double r) { return -c * std::exp(-r); };
  p.V_inf = a;
  return p;
}

PotentialSpec perturbed_potential(double V_inf, double eps, const ProfileSpec& h) {
  PotentialSpec p;
  p.family = "perturbed";
  p.params = {{"V_inf", V_inf}, {"eps", eps}};
  p.note = "h = " + h.family;
  p.V = [V_inf, eps, fn = h.h](double r) { return V_inf - eps * fn(r); };
  p.dV = [eps, fn = h.dh](double r) { return -eps * fn(r); };
  p.V_inf = V_inf;
  return p;
}

PotentialSpec tabulated_potential(std::vector<double> r, std::vector<double> v) {
  if (r.size() < 2 || r.size() != v.size())
    throw Error(ErrorKind::config_error, "tabulated potential needs >= 2 matching (r, V) rows");
  if (!std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end())
    throw Error(ErrorKind::config_error, "tabulated radii must be strictly increasing");

  // Node slopes by differencing; V' is interpolated linearly between nodes.
  std::vector<double> slope(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == r.size() ? k : k + 1;
    slope[k] = (v[hi] - v[lo]) / (r[hi] - r[lo]);
  }
  auto lookup = [r](double x) -> std::pair<std::size_t, double> {
    if (x <= r.front()) return {0, 0.0};
    if (x >= r.back()) return {r.size() - 2, 1.0};
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - r.begin()) - 1;
    return {k, (x - r[k]) / (r[k + 1] - r[k])};
  };

  PotentialSpec p;
  p.family = "tabulated";
  p.params = {{"rows", static_cast<double>(r.size())}};
  p.V_inf = v.back();
  const double r_last = r.back();
  p.V = [lookup, v](double x) {
    const auto [k, w] = lookup(x);
    return (1.0 - w) * v[k] + w * v[k + 1];
  };
  p.dV = [lookup, slope, r_last](double x) {
    if (x >= r_last) return 0.0;
    const auto [k, w] = lookup(x);
    return (1.0 - w) * slope[k] + w * slope[k + 1];
  };
  return p;
}

ProfileSpec inverse_square_profile() {
  return {"inverse-square", [](double r) { return 1.0 / (1.0 + r * r); },
          [](double r) {
            const double q = 1.0 + r * r;
            return -2.0 * r / (q * q);
          }};
}

ProfileSpec gaussian_profile() {
  return {"gaussian", [](double r) { return std::exp(-r * r); },
          [](double r) { return -2.0 * r * std::exp(-r * r); }};
}

ProfileSpec zero_profile() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

ProfileSpec negative_exponential_profile() {
  return {"negative-exponential", [](double r) { return -std::exp(-r); },
          [](double r) { return std::exp(-r); }};
}

NonlinearitySpec power_nonlinearity(double p, double c) {
  if (!(p > 2.0)) throw Error(ErrorKind::config_error, "power nonlinearity needs p > 2");
  NonlinearitySpec s;
  s.family = "power";
  s.params = {{"p", p}, {"c", c}};
  s.f = [=](double t) { return c * std::pow(std::abs(t), p - 2.0) * t; };
  s.F = [=](double t) { return c * std::pow(std::abs(t), p) / p; };
  return s;
}

NonlinearitySpec bounded_nonlinearity(double c) {
  NonlinearitySpec s;
  s.family = "bounded";
  s.params = {{"c", c}};
  s.f = [=](double t) { return 2.0 * c * t * t * t * std::exp(-t * t); };
  s.F = [=](double t) { return c * (1.0 - (1.0 + t * t) * std::exp(-t * t)); };
  return s;
}

NonlinearitySpec linear_nonlinearity(double c) {
  NonlinearitySpec s;
  s.family = "linear";
  s.params = {{"c", c}};
  s.f = [=](double t) { return c * t; };
  s.F = [=](double t) { return 0.5 * c * t * t; };
  return s;
}

NonlinearitySpec zero_nonlinearity() {
  NonlinearitySpec s;
  s.family = "zero";
  s.f = [](double) { return 0.0; };
  s.F = [](double) { return 0.0; };
  return s;
}

double critical_exponent(int dim) { return 2.0 * dim / (dim - 2.0); }

bool all_pass(const std::vector<ConditionReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

SampleLattice SampleLattice::standard(double r_max) {
  return {log_space(1e-2, 1e2, 128), log_space(1e-3, r_max, 256)};
}

ConditionReport check_V1V2(const PotentialSpec& V, const std::vector<double>& radii) {
  ConditionReport rep;
  rep.condition = "V1-V2";
  rep.tolerance = 1e-12 * (1.0 + std::abs(V.V_inf));
  rep.note = V.note;
  rep.margin = std::numeric_limits<double>::infinity();

  std::vector<double> rs{0.0};
  rs.insert(rs.end(), radii.begin(), radii.end());
  for (double r : rs) {
    const double v = V.value(r);
    const double m = std::min(v, V.V_inf - v);
    if (!std::isfinite(v) || m < rep.margin) {
      rep.margin = std::isfinite(v) ? m : -std::numeric_limits<double>::infinity();
      rep.witness = {{"r", r}};
    }
  }
  rep.samples = static_cast<long>(rs.size());
  const double tail = std::abs(V.value(rs.back()) - V.V_inf);
  const bool tail_ok = tail <= 1e-2 * (1.0 + std::abs(V.V_inf));
  rep.pass = rep.margin >= -rep.tolerance && tail_ok;
  if (!tail_ok) {
    rep.witness = {{"r", rs.back()}, {"tail_gap", tail}};
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("V(r_max) far from V_inf");
  }
  return rep;
}

ThetaEstimate estimate_theta_V4(const PotentialSpec& V, int dim, const std::vector<double>& radii) {
  ThetaEstimate est;
  const double d2 = static_cast<double>((dim - 2) * (dim - 2));
  double sup = -std::numeric_limits<double>::infinity();
  for (double r : radii) {
    if (r <= 0.0) continue;
    const double val = 2.0 * r * r * V.virial(r) / d2;
    if (val > sup) {
      sup = val;
      est.witness_r = r;
    }
  }
  est.theta = std::max(0.0, sup);
  est.pass = est.theta < 1.0;
  return est;
}

ConditionReport check_V4(const PotentialSpec& V, int dim, double theta,
                         const std::vector<double>& radii) {
  ConditionReport rep;
  rep.condition = "V4";
  rep.tolerance = 1e-12;
  rep.margin = std::numeric_limits<double>::infinity();
  const double d2 = static_cast<double>((dim - 2) * (dim - 2));
  for (double r : radii) {
    if (r <= 0.0) continue;
    const double m = d2 * theta / (2.0 * r * r) - V.virial(r);
    ++rep.samples;
    if (m < rep.margin) {
      rep.margin = m;
      rep.witness = {{"r", r}, {"theta", theta}};
    }
  }
  rep.pass = theta >= 0.0 && theta < 1.0 && rep.margin >= -rep.tolerance;
  return rep;
}

namespace {

double g_poly(double t, int dim) {
  return 2.0 - dim * std::pow(t, dim - 2) + (dim - 2) * std::pow(t, dim);
}

}  // namespace

ConditionReport check_V3(const PotentialSpec& V, int dim, double theta, const SampleLattice& lattice) {
  ConditionReport rep;
  rep.condition = "V3";
  rep.tolerance = 1e-10;
  rep.note = V.note;
  rep.margin = std::numeric_limits<double>::infinity();
  const double N = dim;
  const double d2 = (N - 2.0) * (N - 2.0);
  const double d3 = d2 * (N - 2.0);

  for (double r : lattice.r) {
    const double Vr = V.value(r);
    const double xr = V.virial(r);
    for (double t : lattice.t) {
      const double tr = t * r;
      const double Vtr = V.value(tr);
      const double xtr = V.virial(tr);
      const double e = N * (Vr - Vtr) + (xr - xtr) + d3 * theta * (t * t - 1.0) / (4.0 * t * t * r * r);
      const double s = t >= 1.0 ? e : -e;
      if (s < rep.margin) {
        rep.margin = s;
        rep.witness = {{"t", t}, {"r", r}, {"form", 0.0}};
      }
      const double tN = std::pow(t, dim);
      const double integrated =
          (N * tN * (Vr - Vtr) + (tN - 1.0) * xr + d2 * theta * g_poly(t, dim) / (4.0 * r * r)) / (1.0 + tN);
      if (integrated < rep.margin) {
        rep.margin = integrated;
        rep.witness = {{"t", t}, {"r", r}, {"form", 1.0}};
      }
    }
  }
  rep.samples = static_cast<long>(lattice.t.size() * lattice.r.size());
  rep.pass = theta >= 0.0 && theta < 1.0 && rep.margin >= -rep.tolerance;
  return rep;
}

ThetaEstimate estimate_theta_V3(const PotentialSpec& V, int dim, const SampleLattice& lattice) {
  ThetaEstimate est;
  const double top = 1.0 - 1e-12;
  const ConditionReport at_top = check_V3(V, dim, top, lattice);
  if (!at_top.pass) {
    est.theta = 1.0;
    est.pass = false;
    est.witness_r = at_top.witness.count("r") ? at_top.witness.at("r") : 0.0;
    return est;
  }
  if (check_V3(V, dim, 0.0, lattice).pass) return est;
  double lo = 0.0, hi = top;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (check_V3(V, dim, mid, lattice).pass ? hi : lo) = mid;
  }
  est.theta = hi;
  est.witness_r = check_V3(V, dim, lo, lattice).witness.at("r");
  return est;
}

double resolve_theta(const PotentialSpec& V, int dim, double r_max) {
  if (V.theta) return *V.theta;
  if (V.is_constant()) return 0.0;
  const SampleLattice lattice = SampleLattice::standard(r_max);
  const double t4 = estimate_theta_V4(V, dim, lattice.r).theta;
  const double t3 = estimate_theta_V3(V, dim, lattice).theta;
  return std::max(t4, t3);
}

ConditionReport check_virial_bounds(const PotentialSpec& V, int dim, double theta,
                               const std::vector<double>& radii) {
  ConditionReport rep;
  rep.condition = "virial-two-sided-bound";
  const double N = dim;
  const double d2 = (N - 2.0) * (N - 2.0);
  const double d3 = d2 * (N - 2.0);
  rep.tolerance = 1e-12 * (1.0 + N * std::abs(V.V_inf));
  rep.margin = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    if (r <= 0.0) continue;
    const double mid = N * V.value(r) + V.virial(r);
    const double lower = mid - (N * V.V_inf - d3 * theta / (4.0 * r * r));
    const double upper = N * V.V_inf + d2 * theta / (2.0 * r * r) - mid;
    ++rep.samples;
    if (lower < rep.margin) {
      rep.margin = lower;
      rep.witness = {{"r", r}, {"side", 0.0}};
    }
    if (upper < rep.margin) {
      rep.margin = upper;
      rep.witness = {{"r", r}, {"side", 1.0}};
    }
  }
  rep.pass = rep.margin >= -rep.tolerance;
  return rep;
}

namespace {

double simpson_integral(const ScalarFn& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

std::vector<double> symmetric_samples(double lo, double hi, int count) {
  std::vector<double> pos = log_space(lo, hi, count);
  std::vector<double> out;
  out.reserve(2 * pos.size());
  for (double t : pos) {
    out.push_back(t);
    out.push_back(-t);
  }
  return out;
}

}  // namespace

NonlinearityCheck check_F(const NonlinearitySpec& f, int dim, double V_inf) {
  NonlinearityCheck out;
  const double q = critical_exponent(dim) - 1.0;
  const double upper_power = (dim + 2.0) / (dim - 2.0);
  const double decay_margin = 1e-2;
  const std::vector<double> ts = symmetric_samples(1e-6, 1e6, 241);

  ConditionReport f1;
  f1.condition = "F1";
  f1.samples = static_cast<long>(ts.size());
  for (double t : ts) {
    const double ratio = std::abs(f.f(t)) / (1.0 + std::pow(std::abs(t), q));
    if (!std::isfinite(ratio)) {
      f1.pass = false;
      f1.witness = {{"t", t}};
      break;
    }
    if (ratio >= out.C0) {
      out.C0 = ratio;
      f1.witness = {{"t", t}, {"C0", ratio}};
      f1.pass = true;
    }
  }
  if (out.C0 == 0.0) f1.pass = true;
  f1.margin = out.C0;
  f1.note = "margin is the fitted growth constant C0";

  ConditionReport f2;
  f2.condition = "F2";
  f2.tolerance = decay_margin;
  f2.samples = static_cast<long>(ts.size());
  double small = 0.0, mid_lin = 0.0, big = 0.0, mid_crit = 0.0;
  double t_small = 0.0, t_big = 0.0;
  for (double t : ts) {
    const double a = std::abs(t);
    const double lin = std::abs(f.f(t) / t);
    const double crit = std::abs(f.f(t)) / std::pow(a, upper_power);
    if (a <= 1e-4 && lin >= small) {
      small = lin;
      t_small = t;
    }
    if (a >= 1e-1 && a <= 1e1) {
      mid_lin = std::max(mid_lin, lin);
      mid_crit = std::max(mid_crit, crit);
    }
    if (a >= 1e4 && crit >= big) {
      big = crit;
      t_big = t;
    }
  }
  // Normalized margins: positive when the ratio near the limit is below
  // decay_margin times its size on the bulk range [0.1, 10].
  const double m0 = mid_lin > 0.0 ? (decay_margin * mid_lin - small) / mid_lin : (small == 0.0 ? 1.0 : -1.0);
  const double minf = mid_crit > 0.0 ? (decay_margin * mid_crit - big) / mid_crit : (big == 0.0 ? 1.0 : -1.0);
  f2.margin = std::min(m0, minf);
  f2.witness = m0 <= minf ? ParamMap{{"t", t_small}, {"ratio", small}} : ParamMap{{"t", t_big}, {"ratio", big}};
  f2.pass = m0 >= 0.0 && minf >= 0.0;

  ConditionReport f3;
  f3.condition = "F3";
  const std::vector<double> ss = log_space(1e-3, 1e3, 601);
  f3.samples = static_cast<long>(ss.size());
  f3.margin = -std::numeric_limits<double>::infinity();
  for (double s : ss) {
    const double m = f.F(s) - 0.5 * V_inf * s * s;
    if (m > 0.0) {
      out.s0 = s;
      f3.margin = m;
      f3.witness = {{"s0", s}};
      break;
    }
    if (m > f3.margin) {
      f3.margin = m;
      f3.witness = {{"s", s}};
    }
  }
  f3.pass = out.s0.has_value();

  ConditionReport anti;
  anti.condition = "F-antiderivative";
  anti.tolerance = 1e-8;
  anti.margin = std::numeric_limits<double>::infinity();
  anti.pass = std::abs(f.F(0.0)) == 0.0 && f.f(0.0) == 0.0;
  const std::vector<double> as = symmetric_samples(1e-3, 1e2, 61);
  anti.samples = static_cast<long>(as.size());
  for (double t : as) {
    const double quad = simpson_integral(f.f, 0.0, t, 4000);
    const double m = anti.tolerance * (1.0 + std::abs(f.F(t))) - std::abs(f.F(t) - quad);
    if (m < anti.margin) {
      anti.margin = m;
      anti.witness = {{"t", t}};
    }
  }
  anti.pass = anti.pass && anti.margin >= 0.0;

  out.reports = {f1, f2, f3, anti};
  return out;
}

std::vector<ConditionReport> check_H(const ProfileSpec& h, int, const std::vector<double>& radii,
                                     double cap) {
  ConditionReport h1;
  h1.condition = "H1";
  h1.tolerance = 1e-14;
  h1.margin = std::numeric_limits<double>::infinity();
  double peak = 0.0;
  std::vector<double> rs{0.0};
  rs.insert(rs.end(), radii.begin(), radii.end());
  for (double r : rs) {
    const double v = h.h(r);
    peak = std::max(peak, std::abs(v));
    if (v < h1.margin) {
      h1.margin = v;
      h1.witness = {{"r", r}};
    }
  }
  h1.samples = static_cast<long>(rs.size());
  const double tail = std::abs(h.h(rs.back()));
  const bool decays = peak == 0.0 || tail <= 1e-2 * peak;
  h1.pass = h1.margin >= -h1.tolerance && decays;
  if (!decays) h1.note = "h does not decay toward r_max";

  ConditionReport h2;
  h2.condition = "H2";
  h2.tolerance = cap;
  double sup = -std::numeric_limits<double>::infinity();
  for (double r : rs) {
    const double v = -r * r * r * h.dh(r);
    if (!std::isfinite(v) || v > sup) {
      sup = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
      h2.witness = {{"r", r}, {"value", sup}};
    }
  }
  h2.samples = static_cast<long>(rs.size());
  h2.margin = cap - sup;
  h2.pass = std::isfinite(sup) && sup <= cap;
  return {h1, h2};
}

}  // namespace groundstate
