#include "cutsrd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

#include "cutsrd/errors.hpp"

namespace cutsrd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(key, "'" + v + "' is not a number");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(key, "'" + v + "' is not an integer");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes" || v == "bj") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no" || v == "none") return false;
  throw ValidationError(key, "'" + v + "' is not a switch");
}

BcKind to_bc(const std::string& key, const std::string& v) {
  try {
    return parse_bc(v);
  } catch (const UnknownBC& e) {
    throw ValidationError(key, e.what());
  }
}

const std::set<std::string> kProblems{"vortex", "cylinder", "double_mach", "advection"};

}  // namespace

GradientMode parse_gradient_mode(const std::string& name) {
  if (name == "first_order") return GradientMode::FirstOrderLSQ;
  if (name == "pointwise_quadratic") return GradientMode::PointwiseQuadratic;
  if (name == "second_order") return GradientMode::SecondOrderQuadratic;
  throw ValidationError("gradient_mode", "unknown gradient mode '" + name + "'");
}

const char* to_string(GradientMode mode) {
  switch (mode) {
    case GradientMode::FirstOrderLSQ: return "first_order";
    case GradientMode::PointwiseQuadratic: return "pointwise_quadratic";
    case GradientMode::SecondOrderQuadratic: return "second_order";
  }
  return "?";
}

SolverConfig parse_config(const std::string& text) {
  SolverConfig c;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");

    if (key == "problem") {
      if (!kProblems.count(v)) throw ValidationError(key, "unknown problem '" + v + "'");
      c.problem = v;
    } else if (key == "nx") c.nx = to_int(key, v);
    else if (key == "ny") c.ny = to_int(key, v);
    else if (key == "cfl") c.cfl = to_double(key, v);
    else if (key == "t_final") c.t_final = to_double(key, v);
    else if (key == "steady_tol") c.steady_tol = to_double(key, v);
    else if (key == "max_steps") c.max_steps = to_int(key, v);
    else if (key == "gradient_mode") c.gradient_mode = parse_gradient_mode(v);
    else if (key == "limiter") c.limiter = to_bool(key, v);
    else if (key == "srd") c.srd = to_bool(key, v);
    else if (key == "srd_threshold") c.srd_threshold = to_double(key, v);
    else if (key == "srd_order") {
      const int o = to_int(key, v);
      if (o != 1 && o != 2) throw ValidationError(key, "must be 1 or 2");
      c.srd_order = o == 1 ? SrdOrder::First : SrdOrder::Second;
    } else if (key == "bc_left") c.bc_left = to_bc(key, v);
    else if (key == "bc_right") c.bc_right = to_bc(key, v);
    else if (key == "bc_bottom") c.bc_bottom = to_bc(key, v);
    else if (key == "bc_top") c.bc_top = to_bc(key, v);
    else if (key == "output_dir") c.output_dir = v;
    else if (key == "report_interval") c.report_interval = to_int(key, v);
    else if (key == "audit_tol") c.audit_tol = to_double(key, v);
    else if (key == "gamma") c.gamma = to_double(key, v);
    else if (key == "scheme") {
      if (v != "mol") throw ValidationError(key, "only 'mol' is available");
      c.scheme = v;
    } else if (key == "mach") c.mach = to_double(key, v);
    else if (key == "x_shock") c.x_shock = to_double(key, v);
    else if (key == "adv_a") c.adv_a = to_double(key, v);
    else if (key == "adv_b") c.adv_b = to_double(key, v);
    else if (key == "profile") {
      if (v != "sine" && v != "constant") throw ValidationError(key, "unknown profile '" + v + "'");
      c.profile = v;
    } else if (key == "x_lo") c.x_lo = to_double(key, v);
    else if (key == "x_hi") c.x_hi = to_double(key, v);
    else if (key == "y_lo") c.y_lo = to_double(key, v);
    else if (key == "y_hi") c.y_hi = to_double(key, v);
    else if (key == "geometry") {
      if (v != "full" && v != "circle" && v != "halfplane" && v != "annulus") {
        throw ValidationError(key, "unknown geometry '" + v + "'");
      }
      c.geometry = v;
    } else if (key == "geom_cx") c.geom_cx = to_double(key, v);
    else if (key == "geom_cy") c.geom_cy = to_double(key, v);
    else if (key == "geom_r") c.geom_r = to_double(key, v);
    else if (key == "geom_r2") c.geom_r2 = to_double(key, v);
    else if (key == "geom_nx") c.geom_nx = to_double(key, v);
    else if (key == "geom_ny") c.geom_ny = to_double(key, v);
    else if (key == "geom_keep") {
      if (v != "inside" && v != "outside") throw ValidationError(key, "inside or outside");
      c.geom_keep = v;
    } else {
      throw ValidationError(key, "unknown key");
    }
  }

  if (c.problem.empty()) throw ValidationError("problem", "missing");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ValidationError("cfl", "must lie in (0, 1]");
  if (!(c.srd_threshold > 0.0 && c.srd_threshold <= 1.0)) {
    throw ValidationError("srd_threshold", "must lie in (0, 1]");
  }
  if (c.nx != 0 && c.nx < 8) throw ValidationError("nx", "must be at least 8");
  if (c.ny != 0 && c.ny < 8) throw ValidationError("ny", "must be at least 8");
  if (c.t_final && !(*c.t_final > 0.0)) throw ValidationError("t_final", "must be positive");
  if (!(c.steady_tol > 0.0)) throw ValidationError("steady_tol", "must be positive");
  if (c.max_steps < 0) throw ValidationError("max_steps", "must be non-negative");
  if (c.gamma && !(*c.gamma > 1.0)) throw ValidationError("gamma", "must exceed 1");
  if (c.mach && !(*c.mach > 1.0)) throw ValidationError("mach", "must exceed 1");
  if (!(c.audit_tol >= 0.0)) throw ValidationError("audit_tol", "must be non-negative");
  if (c.report_interval < 0) throw ValidationError("report_interval", "must be non-negative");
  return c;
}

SolverConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

ProblemSpec make_problem(const SolverConfig& c) {
  const std::map<std::string, std::pair<int, int>> defaults{{"vortex", {27, 27}},
                                                             {"cylinder", {151, 151}},
                                                             {"double_mach", {360, 210}},
                                                             {"advection", {32, 32}}};
  const auto [dnx, dny] = defaults.at(c.problem);
  const int nx = c.nx ? c.nx : dnx;
  const int ny = c.ny ? c.ny : (c.nx ? c.nx : dny);
  ProblemSpec s;
  if (c.problem == "vortex") s = vortex_problem(nx, ny);
  else if (c.problem == "cylinder") s = cylinder_problem(nx, ny);
  else if (c.problem == "double_mach") s = double_mach_problem(nx, ny);
  else s = advection_problem(nx, ny);

  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Advection>) {
          if (c.adv_a) p.a = *c.adv_a;
          if (c.adv_b) p.b = *c.adv_b;
          if (c.profile) {
            p.profile = *c.profile == "constant" ? Advection::Profile::Constant
                                                  : Advection::Profile::Sine;
          }
        } else {
          if (c.gamma) p.gamma = *c.gamma;
          if constexpr (!std::is_same_v<T, SupersonicVortex>) {
            if (c.mach) p.mach = *c.mach;
          }
          if constexpr (std::is_same_v<T, CylinderShock>) {
            if (c.x_shock) p.x_shock = *c.x_shock;
          }
          if constexpr (std::is_same_v<T, DoubleMach>) {
            if (c.x_shock) p.x_wall = *c.x_shock;
          }
        }
      },
      s.variant);

  if (c.x_lo) s.lo.x = *c.x_lo;
  if (c.x_hi) s.hi.x = *c.x_hi;
  if (c.y_lo) s.lo.y = *c.y_lo;
  if (c.y_hi) s.hi.y = *c.y_hi;
  if (c.geometry) {
    const Vec2 ctr{c.geom_cx, c.geom_cy};
    if (*c.geometry == "full") {
      s.geometry = ImplicitGeometry(FullDomain{});
    } else if (*c.geometry == "circle") {
      if (!(c.geom_r > 0.0)) throw ValidationError("geom_r", "must be positive");
      s.geometry = ImplicitGeometry(Circle{ctr, c.geom_r,
                          c.geom_keep == "inside" ? Circle::Keep::Inside : Circle::Keep::Outside});
    } else if (*c.geometry == "halfplane") {
      const double len = std::hypot(c.geom_nx, c.geom_ny);
      if (!(len > 0.0)) throw ValidationError("geom_nx", "normal must be nonzero");
      s.geometry = ImplicitGeometry(HalfPlane{ctr, {c.geom_nx / len, c.geom_ny / len}});
    } else {
      if (!(c.geom_r > 0.0 && c.geom_r2 > c.geom_r)) {
        throw ValidationError("geom_r2", "annulus needs 0 < geom_r < geom_r2");
      }
      s.geometry = ImplicitGeometry(QuarterAnnulus{ctr, c.geom_r, c.geom_r2});
    }
  }
  if (c.bc_left) s.bc.left = *c.bc_left;
  if (c.bc_right) s.bc.right = *c.bc_right;
  if (c.bc_bottom) s.bc.bottom = *c.bc_bottom;
  if (c.bc_top) s.bc.top = *c.bc_top;
  if (c.t_final) s.t_final = *c.t_final;
  s.bc.exact = exact_state(s);
  return s;
}

}  // namespace cutsrd
