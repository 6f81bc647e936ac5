#include "groundstate/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace groundstate {

namespace {

const std::map<std::string, ParamMap>& potential_defaults() {
  static const std::map<std::string, ParamMap> d{
      {"constant", {{"V_inf", 1.0}}},
      {"decaying-well", {{"a", 1.0}, {"b", 0.2}, {"alpha", 2.0}}},
      {"lorentzian-well", {{"V1", 1.0}, {"A", 0.05}}},
      {"exponential", {{"a", 1.0}, {"c", -0.1}}},
      {"perturbed", {{"V_inf", 1.0}, {"eps", 0.1}}},
      {"tabulated", {}},
  };
  return d;
}

const std::map<std::string, ParamMap>& nonlinearity_defaults() {
  static const std::map<std::string, ParamMap> d{
      {"power", {{"p", 4.0}, {"c", 1.0}}},
      {"bounded", {{"c", 1.0}}},
      {"linear", {{"c", 1.0}}},
      {"zero", {}},
  };
  return d;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::config_error, msg); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(key + ": not a number: '" + v + "'");
  }
  if (used != v.size()) fail(key + ": trailing characters in '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    fail(key + ": not an integer: '" + v + "'");
  }
  if (used != v.size()) fail(key + ": trailing characters in '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(key + ": expected true or false, got '" + v + "'");
}

// shortest text that reads back to the same double
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void set_family(std::string& family, ParamMap& params, const std::map<std::string, ParamMap>& table,
                const std::string& what, const std::string& v) {
  const auto it = table.find(v);
  if (it == table.end()) fail("unknown " + what + " family '" + v + "'");
  if (family != v) {
    family = v;
    params = it->second;
  }
}

void set_param(ParamMap& params, const std::string& family, const std::map<std::string, ParamMap>& table,
               const std::string& section, const std::string& key, const std::string& v) {
  const ParamMap& allowed = table.at(family);
  if (!allowed.count(key)) fail(section + "." + key + " is not a parameter of family '" + family + "'");
  params[key] = to_double(section + "." + key, v);
}

void set_value(RunConfig& c, const std::string& section, const std::string& key, const std::string& v) {
  const std::string name = section + "." + key;
  if (section == "grid") {
    if (key == "N") c.grid.N = static_cast<int>(to_long(name, v));
    else if (key == "r_max") c.grid.r_max = to_double(name, v);
    else if (key == "n") c.grid.n = to_long(name, v);
    else fail("unknown key " + name);
  } else if (section == "potential") {
    auto& p = c.potential;
    if (key == "family") set_family(p.family, p.params, potential_defaults(), "potential", v);
    else if (key == "theta") p.theta = to_double(name, v);
    else if (key == "profile") {
      if (p.family != "perturbed") fail(name + " only applies to the perturbed family");
      p.profile = v;
    } else if (key == "table") {
      if (p.family != "tabulated") fail(name + " only applies to the tabulated family");
      p.table = v;
    } else set_param(p.params, p.family, potential_defaults(), section, key, v);
  } else if (section == "nonlinearity") {
    auto& f = c.nonlinearity;
    if (key == "family") set_family(f.family, f.params, nonlinearity_defaults(), "nonlinearity", v);
    else set_param(f.params, f.family, nonlinearity_defaults(), section, key, v);
  } else if (section == "solver") {
    auto& s = c.solver;
    static const std::map<std::string, std::function<void(SolverConfig&, const std::string&, const std::string&)>>
        setters{
            {"max_iters", [](auto& s, auto& n, auto& v) { s.max_iters = static_cast<int>(to_long(n, v)); }},
            {"step", [](auto& s, auto& n, auto& v) { s.step = to_double(n, v); }},
            {"max_step", [](auto& s, auto& n, auto& v) { s.max_step = to_double(n, v); }},
            {"backtrack", [](auto& s, auto& n, auto& v) { s.backtrack = to_double(n, v); }},
            {"grow", [](auto& s, auto& n, auto& v) { s.grow = to_double(n, v); }},
            {"gradient_tol", [](auto& s, auto& n, auto& v) { s.gradient_tol = to_double(n, v); }},
            {"pohozaev_tol", [](auto& s, auto& n, auto& v) { s.pohozaev_tol = to_double(n, v); }},
            {"stall_tol", [](auto& s, auto& n, auto& v) { s.stall_tol = to_double(n, v); }},
            {"stall_window", [](auto& s, auto& n, auto& v) { s.stall_window = static_cast<int>(to_long(n, v)); }},
            {"init_amplitude", [](auto& s, auto& n, auto& v) { s.init_amplitude = to_double(n, v); }},
            {"init_width", [](auto& s, auto& n, auto& v) { s.init_width = to_double(n, v); }},
            {"seed", [](auto& s, auto& n, auto& v) { s.seed = static_cast<std::uint64_t>(to_long(n, v)); }},
            {"bl_max_iters", [](auto& s, auto& n, auto& v) { s.bl_max_iters = static_cast<int>(to_long(n, v)); }},
            {"bl_step", [](auto& s, auto& n, auto& v) { s.bl_step = to_double(n, v); }},
            {"bl_tol", [](auto& s, auto& n, auto& v) { s.bl_tol = to_double(n, v); }},
            {"h_ode", [](auto& s, auto& n, auto& v) { s.h_ode = to_double(n, v); }},
            {"horizon", [](auto& s, auto& n, auto& v) { s.horizon = to_double(n, v); }},
        };
    const auto it = setters.find(key);
    if (it == setters.end()) fail("unknown key " + name);
    it->second(s, name, v);
  } else if (section == "sweep") {
    auto& s = c.sweep;
    if (key == "lambda_grid") {
      s.lambda_grid.clear();
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) s.lambda_grid.push_back(to_double(name, trim(item)));
      if (s.lambda_grid.empty()) fail(name + " is empty");
    } else if (key == "route") {
      if (v != "bl" && v != "shooting") fail(name + " must be bl or shooting");
      s.route = v;
    } else if (key == "T_growth") s.T_growth = to_double(name, v);
    else if (key == "T_cap") s.T_cap = to_double(name, v);
    else if (key == "path_points") s.path_points = static_cast<int>(to_long(name, v));
    else fail("unknown key " + name);
  } else if (section == "output") {
    if (key == "dir") c.output.dir = v;
    else if (key == "json") c.output.json = to_bool(name, v);
    else if (key == "csv") c.output.csv = to_bool(name, v);
    else fail("unknown key " + name);
  } else {
    fail("unknown section [" + section + "]");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  // family keys are applied before the parameters of their section
  std::vector<std::tuple<std::string, std::string, std::string>> deferred;
  int lineno = 0;
  auto flush = [&]() {
    for (const auto& [s, k, v] : deferred)
      if (k == "family") set_value(cfg, s, k, v);
    for (const auto& [s, k, v] : deferred)
      if (k != "family") set_value(cfg, s, k, v);
    deferred.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    line = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(lineno) + ": malformed section header");
      flush();
      section = trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "potential" && section != "nonlinearity" && section != "solver" &&
          section != "sweep" && section != "output")
        fail("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) fail("line " + std::to_string(lineno) + ": key outside any section");
    deferred.emplace_back(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  flush();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config_error, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    fail("override must look like section.key=value, got '" + assignment + "'");
  set_value(cfg, trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
            trim(assignment.substr(eq + 1)));
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[grid]\nN = " << c.grid.N << "\nr_max = " << fmt(c.grid.r_max) << "\nn = " << c.grid.n << "\n\n";
  o << "[potential]\nfamily = " << c.potential.family << "\n";
  for (const auto& [k, v] : c.potential.params) o << k << " = " << fmt(v) << "\n";
  if (!c.potential.profile.empty()) o << "profile = " << c.potential.profile << "\n";
  if (!c.potential.table.empty()) o << "table = " << c.potential.table << "\n";
  if (c.potential.theta) o << "theta = " << fmt(*c.potential.theta) << "\n";
  o << "\n[nonlinearity]\nfamily = " << c.nonlinearity.family << "\n";
  for (const auto& [k, v] : c.nonlinearity.params) o << k << " = " << fmt(v) << "\n";
  const auto& s = c.solver;
  o << "\n[solver]\n"
    << "max_iters = " << s.max_iters << "\nstep = " << fmt(s.step) << "\nmax_step = " << fmt(s.max_step)
    << "\nbacktrack = " << fmt(s.backtrack) << "\ngrow = " << fmt(s.grow)
    << "\ngradient_tol = " << fmt(s.gradient_tol) << "\npohozaev_tol = " << fmt(s.pohozaev_tol)
    << "\nstall_tol = " << fmt(s.stall_tol) << "\nstall_window = " << s.stall_window
    << "\ninit_amplitude = " << fmt(s.init_amplitude) << "\ninit_width = " << fmt(s.init_width)
    << "\nseed = " << s.seed << "\nbl_max_iters = " << s.bl_max_iters << "\nbl_step = " << fmt(s.bl_step)
    << "\nbl_tol = " << fmt(s.bl_tol) << "\nh_ode = " << fmt(s.h_ode) << "\nhorizon = " << fmt(s.horizon) << "\n";
  o << "\n[sweep]\nlambda_grid = ";
  for (std::size_t k = 0; k < c.sweep.lambda_grid.size(); ++k) o << (k ? ", " : "") << fmt(c.sweep.lambda_grid[k]);
  o << "\nroute = " << c.sweep.route << "\nT_growth = " << fmt(c.sweep.T_growth) << "\nT_cap = " << fmt(c.sweep.T_cap)
    << "\npath_points = " << c.sweep.path_points << "\n";
  o << "\n[output]\ndir = " << c.output.dir << "\njson = " << (c.output.json ? "true" : "false")
    << "\ncsv = " << (c.output.csv ? "true" : "false") << "\n";
  return o.str();
}

GridPtr build_grid(const RunConfig& cfg) { return make_grid(cfg.grid.N, cfg.grid.r_max, cfg.grid.n); }

ProfileSpec build_profile(const std::string& name) {
  if (name.empty() || name == "inverse-square") return inverse_square_profile();
  if (name == "gaussian") return gaussian_profile();
  if (name == "zero") return zero_profile();
  if (name == "negative-exponential") return negative_exponential_profile();
  fail("unknown profile '" + name + "'");
}

namespace {

PotentialSpec read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read potential table " + path);
  std::string line;
  std::getline(in, line);
  if (trim(line) != "r,V") fail(path + ": expected header r,V");
  std::vector<double> r, v;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(path + ": malformed row '" + line + "'");
    r.push_back(to_double("table.r", trim(line.substr(0, comma))));
    v.push_back(to_double("table.V", trim(line.substr(comma + 1))));
  }
  return tabulated_potential(r, v);
}

}  // namespace

PotentialSpec build_potential(const RunConfig& cfg) {
  const auto& p = cfg.potential;
  const auto& q = p.params;
  PotentialSpec V;
  if (p.family == "constant") V = constant_potential(q.at("V_inf"));
  else if (p.family == "decaying-well") V = decaying_well_potential(q.at("a"), q.at("b"), q.at("alpha"));
  else if (p.family == "lorentzian-well") V = lorentzian_well_potential(q.at("V1"), q.at("A"));
  else if (p.family == "exponential") V = exponential_potential(q.at("a"), q.at("c"));
  else if (p.family == "perturbed") V = perturbed_potential(q.at("V_inf"), q.at("eps"), build_profile(p.profile));
  else if (p.family == "tabulated") {
    if (p.table.empty()) fail("potential.table is required for the tabulated family");
    V = read_table(p.table);
  } else fail("unknown potential family '" + p.family + "'");
  if (p.theta) {
    if (!(*p.theta >= 0.0 && *p.theta < 1.0)) fail("potential.theta must lie in [0, 1)");
    V.theta = p.theta;
  }
  return V;
}

NonlinearitySpec build_nonlinearity(const RunConfig& cfg) {
  const auto& f = cfg.nonlinearity;
  if (f.family == "power") return power_nonlinearity(f.params.at("p"), f.params.at("c"));
  if (f.family == "bounded") return bounded_nonlinearity(f.params.at("c"));
  if (f.family == "linear") return linear_nonlinearity(f.params.at("c"));
  if (f.family == "zero") return zero_nonlinearity();
  fail("unknown nonlinearity family '" + f.family + "'");
}

FunctionalContext build_context(const RunConfig& cfg) {
  PotentialSpec V = build_potential(cfg);
  const auto theta = V.theta;
  return FunctionalContext(build_grid(cfg), std::move(V), build_nonlinearity(cfg), 1.0, theta);
}

SolveOptions solve_options(const RunConfig& cfg) {
  const auto& s = cfg.solver;
  SolveOptions o;
  o.max_iters = s.max_iters;
  o.step = s.step;
  o.max_step = s.max_step;
  o.backtrack = s.backtrack;
  o.grow = s.grow;
  o.gradient_tol = s.gradient_tol;
  o.pohozaev_tol = s.pohozaev_tol;
  o.stall_tol = s.stall_tol;
  o.stall_window = s.stall_window;
  o.init_amplitude = s.init_amplitude;
  o.init_width = s.init_width;
  o.seed = s.seed;
  if (!(o.gradient_tol > 0.0 && o.pohozaev_tol > 0.0 && o.max_iters >= 1))
    fail("solver tolerances must be positive and max_iters >= 1");
  return o;
}

BLOptions bl_options(const RunConfig& cfg) {
  BLOptions o;
  o.max_iters = cfg.solver.bl_max_iters;
  o.step = cfg.solver.bl_step;
  o.lagrange_tol = cfg.solver.bl_tol;
  return o;
}

ShootOptions shoot_options(const RunConfig& cfg) {
  ShootOptions o;
  o.h_ode = cfg.solver.h_ode;
  o.horizon = cfg.solver.horizon;
  return o;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.lambda_grid = cfg.sweep.lambda_grid;
  o.route = cfg.sweep.route;
  o.T_growth = cfg.sweep.T_growth;
  o.T_cap = cfg.sweep.T_cap;
  o.path_points = cfg.sweep.path_points;
  o.bl = bl_options(cfg);
  o.shoot = shoot_options(cfg);
  return o;
}

}  // namespace groundstate
