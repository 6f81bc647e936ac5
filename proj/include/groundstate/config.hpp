#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groundstate/functionals.hpp"
#include "groundstate/solver.hpp"

namespace groundstate {

struct GridConfig {
  int N = 3;
  double r_max = 30.0;
  long n = 4096;
  bool operator==(const GridConfig&) const = default;
};

struct PotentialConfig {
  std::string family = "constant";
  ParamMap params{{"V_inf", 1.0}};
  std::string profile;  // perturbed family
  std::string table;    // tabulated family: CSV with header r,V
  std::optional<double> theta;
  bool operator==(const PotentialConfig&) const = default;
};

struct NonlinearityConfig {
  std::string family = "power";
  ParamMap params{{"p", 4.0}, {"c", 1.0}};
  bool operator==(const NonlinearityConfig&) const = default;
};

struct SolverConfig {
  int max_iters = 20000;
  double step = 1.0;
  double max_step = 1.0;
  double backtrack = 0.5;
  double grow = 1.2;
  double gradient_tol = 1e-3;
  double pohozaev_tol = 1e-8;
  double stall_tol = 1e-12;
  int stall_window = 10;
  double init_amplitude = 1.0;
  double init_width = 2.0;
  std::uint64_t seed = 0;
  int bl_max_iters = 20000;
  double bl_step = 0.2;
  double bl_tol = 1e-10;
  double h_ode = 1e-3;
  double horizon = 30.0;
  bool operator==(const SolverConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> lambda_grid{0.993, 0.996, 1.0};
  std::string route = "bl";
  double T_growth = 1.25;
  double T_cap = 1e3;
  int path_points = 256;
  bool operator==(const SweepConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool json = true;
  bool csv = true;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  GridConfig grid;
  PotentialConfig potential;
  NonlinearityConfig nonlinearity;
  SolverConfig solver;
  SweepConfig sweep;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;
};

/// INI text: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Unknown sections and keys, and parameters foreign to the chosen family,
/// are config errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Applies `section.key=value`.
void apply_override(RunConfig& cfg, const std::string& assignment);
/// Canonical text; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

GridPtr build_grid(const RunConfig& cfg);
PotentialSpec build_potential(const RunConfig& cfg);
/// inverse-square (default), gaussian, zero, negative-exponential.
ProfileSpec build_profile(const std::string& name);
NonlinearitySpec build_nonlinearity(const RunConfig& cfg);
FunctionalContext build_context(const RunConfig& cfg);
SolveOptions solve_options(const RunConfig& cfg);
BLOptions bl_options(const RunConfig& cfg);
ShootOptions shoot_options(const RunConfig& cfg);
SweepOptions sweep_options(const RunConfig& cfg);

}  // namespace groundstate
