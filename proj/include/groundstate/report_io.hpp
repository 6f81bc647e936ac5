#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "groundstate/config.hpp"
#include "groundstate/verify.hpp"

namespace groundstate {

using nlohmann::json;

json to_json(const ConditionReport& r);
json to_json(const SolveReport& r);
json to_json(const SweepReport& r);
json to_json(const VerificationReport& r);
json to_json(const FiberProjection& p);
json grid_json(const RadialGrid& g);

/// Serializes with every number printed at 17 significant digits and
/// non-finite numbers as null, keys in sorted order, two-space indent.
std::string dump_json(const json& j);

/// Writes to `path.tmp` and renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string profile_csv(const RadialFunction& u);                 // r,u
std::string fiber_csv(const std::vector<FiberPoint>& points);     // t,zeta,P
std::string sweep_csv(const SweepReport& r);                      // lambda,m_inf,c_bar,margin

/// Reads an `r,u` CSV back onto `grid`; grid-mismatch when the rows do not
/// reproduce the grid nodes.
RadialFunction read_profile_csv(const std::filesystem::path& path, const GridPtr& grid);

}  // namespace groundstate
