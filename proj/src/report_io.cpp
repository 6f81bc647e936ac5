#include "groundstate/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace groundstate {

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const json& j, std::ostringstream& o, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        o << "{}";
        return;
      }
      o << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) o << ",\n";
        first = false;
        o << pad << json(it.key()).dump() << ": ";
        emit(it.value(), o, depth + 1);
      }
      o << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        o << "[]";
        return;
      }
      o << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) o << ",\n";
        o << pad;
        emit(j[k], o, depth + 1);
      }
      o << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float:
      o << num(j.get<double>());
      return;
    default:
      o << j.dump();
  }
}

json params_json(const ParamMap& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

}  // namespace

std::string dump_json(const json& j) {
  std::ostringstream o;
  emit(j, o, 0);
  o << "\n";
  return o.str();
}

json grid_json(const RadialGrid& g) {
  return {{"N", g.dim()}, {"r_max", g.r_max()}, {"n", static_cast<long>(g.size())}, {"h", g.spacing()},
          {"omega_N", g.omega()}};
}

json to_json(const ConditionReport& r) {
  json j{{"condition", r.condition}, {"pass", r.pass},          {"margin", r.margin},
         {"samples", r.samples},     {"tolerance", r.tolerance}, {"witness", params_json(r.witness)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const SolveReport& r) {
  return {{"route", r.route},
          {"converged", r.converged},
          {"energy", r.energy},
          {"pohozaev_residual", r.pohozaev_residual},
          {"pde_residual", r.pde_residual},
          {"iterations", r.iterations},
          {"u_at_zero", r.u_at_zero},
          {"scale", r.scale},
          {"multiplier", r.multiplier},
          {"grid", grid_json(r.u_star.grid())}};
}

json to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"lambda", row.lambda},
                    {"m_inf", row.m_inf},
                    {"c_bar", row.c_bar},
                    {"t_max", row.t_max},
                    {"margin", row.margin}});
  return {{"lambda_bar", r.lambda_bar},
          {"lambda_bar_potential", r.lambda_bar_potential},
          {"lambda_bar_gradient", r.lambda_bar_gradient},
          {"T", r.T},
          {"x_bar", r.x_bar},
          {"r_bar", r.r_bar},
          {"zeta0", r.zeta0},
          {"m1_inf", r.m1_inf},
          {"rows", rows},
          {"dropped", r.dropped},
          {"monotone", r.monotone},
          {"all_margins_positive", r.all_margins_positive}};
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"name", c.name},       {"statement", c.statement}, {"pass", c.pass},
           {"margin", c.margin},   {"samples", c.samples},     {"tolerance", c.tolerance},
           {"witness", params_json(c.witness)}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(j);
  }
  return {{"pass", r.pass},
          {"seed", r.seed},
          {"grid", {{"N", r.dim}, {"r_max", r.r_max}, {"n", r.n}}},
          {"theta", r.theta},
          {"gamma1_hat", r.gamma1_hat},
          {"gamma2_hat", r.gamma2_hat},
          {"rho_hat", r.rho_hat},
          {"with_solution", r.with_solution},
          {"checks", checks}};
}

json to_json(const FiberProjection& p) {
  return {{"t_u", p.t_u},
          {"residual", p.residual},
          {"bracket", {p.bracket.first, p.bracket.second}},
          {"sign_changes", p.sign_changes},
          {"zeta_max", p.zeta_max},
          {"interpolation_gap", p.interpolation_gap}};
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::io_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot rename onto " + path.string() + ": " + ec.message());
}

std::string profile_csv(const RadialFunction& u) {
  std::ostringstream o;
  o << "r,u\n";
  const Vector& r = u.grid().nodes();
  for (Eigen::Index i = 0; i < u.size(); ++i) o << num(r[i]) << "," << num(u[i]) << "\n";
  return o.str();
}

std::string fiber_csv(const std::vector<FiberPoint>& points) {
  std::ostringstream o;
  o << "t,zeta,P\n";
  for (const auto& p : points) o << num(p.t) << "," << num(p.zeta) << "," << num(p.P) << "\n";
  return o.str();
}

std::string sweep_csv(const SweepReport& r) {
  std::ostringstream o;
  o << "lambda,m_inf,c_bar,margin\n";
  for (const auto& row : r.rows)
    o << num(row.lambda) << "," << num(row.m_inf) << "," << num(row.c_bar) << "," << num(row.margin) << "\n";
  return o.str();
}

RadialFunction read_profile_csv(const std::filesystem::path& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read profile " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "r,u") throw Error(ErrorKind::io_error, path.string() + ": expected header r,u");
  std::vector<double> r, u;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::io_error, path.string() + ": malformed row");
    r.push_back(std::stod(line.substr(0, comma)));
    u.push_back(std::stod(line.substr(comma + 1)));
  }
  if (static_cast<Eigen::Index>(r.size()) != grid->size())
    throw Error(ErrorKind::grid_mismatch, "profile has " + std::to_string(r.size()) + " rows, grid has " +
                                              std::to_string(grid->size()) + " nodes");
  Vector v(grid->size());
  for (Eigen::Index i = 0; i < grid->size(); ++i) {
    if (std::abs(r[static_cast<std::size_t>(i)] - grid->nodes()[i]) > 1e-9 * (1.0 + grid->r_max()))
      throw Error(ErrorKind::grid_mismatch, "profile radii do not match the grid nodes");
    v[i] = u[static_cast<std::size_t>(i)];
  }
  return RadialFunction(grid, std::move(v));
}

}  // namespace groundstate
