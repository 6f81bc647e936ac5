#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groundstate/solver.hpp"

namespace groundstate {

struct CheckResult {
  std::string name;
  /// The inequality or identity being sampled, in plain math.
  std::string statement;
  bool pass = false;
  double margin = 0.0;
  long samples = 0;
  double tolerance = 0.0;
  ParamMap witness;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool pass = false;
  std::uint64_t seed = 0;
  int dim = 0;
  double r_max = 0.0;
  long n = 0;
  double theta = 0.0;
  /// Empirical norm-equivalence constants and manifold floor.
  double gamma1_hat = 0.0;
  double gamma2_hat = 0.0;
  double rho_hat = 0.0;
  bool with_solution = false;

  const CheckResult* find(const std::string& name) const;
};

struct SuiteOptions {
  int hardy_samples = 100;
  int iip_samples = 100;
  std::vector<double> iip_t{0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 4.0};
  int inclusion_samples = 200;
  int norm_samples = 100;
  int fiber_samples = 100;
  int fiber_points = 64;
  int minimax_samples = 100;
  BLOptions bl;
};

/// Runs every sampled check with a fixed seed. Throws precondition-failed
/// when V fails (V1)-(V2) or f fails (F1)-(F3).
VerificationReport run_suite(const FunctionalContext& ctx, const SolveReport* solution, std::uint64_t seed,
                             const SuiteOptions& opts = {});

/// Individual scans, shared with the acceptance suite.
CheckResult check_g_positivity(const std::vector<int>& dims = {3, 4, 5});
CheckResult check_hardy(const FunctionalContext& ctx, int samples, std::uint64_t seed);
CheckResult check_iip(const FunctionalContext& ctx, int samples, const std::vector<double>& ts, std::uint64_t seed);
CheckResult check_inclusion(const FunctionalContext& ctx, int samples, std::uint64_t seed);

struct FiberScan {
  CheckResult uniqueness;
  CheckResult fiber_max;
  CheckResult positive_level;
  double rho_hat = 0.0;
};
FiberScan check_fibers(const FunctionalContext& ctx, int samples, int fiber_points, std::uint64_t seed);

struct NormScan {
  CheckResult check;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};
NormScan check_norm_equivalence(const FunctionalContext& ctx, int samples, std::uint64_t seed);

CheckResult check_minimax(const FunctionalContext& ctx, double m_hat, int samples, std::uint64_t seed);

}  // namespace groundstate
