#pragma once

// key=value run configuration. Lines starting with '#' (after whitespace)
// and trailing '# ...' comments are ignored; unknown keys are rejected.

#include <optional>
#include <string>

#include "cutsrd/problems.hpp"
#include "cutsrd/recon.hpp"
#include "cutsrd/scheme.hpp"
#include "cutsrd/srd.hpp"

namespace cutsrd {

struct SolverConfig {
  std::string problem;  // vortex | cylinder | double_mach | advection
  int nx = 0;           // 0: problem default
  int ny = 0;
  double cfl = 1.0;
  std::optional<double> t_final;  // unset: problem default; vortex marches to steady state
  double steady_tol = 1e-10;
  int max_steps = 0;  // 0: 200 * nx for steady runs, unlimited otherwise
  GradientMode gradient_mode = GradientMode::SecondOrderQuadratic;
  bool limiter = false;
  bool srd = true;
  double srd_threshold = 0.5;
  SrdOrder srd_order = SrdOrder::Second;
  std::optional<BcKind> bc_left, bc_right, bc_bottom, bc_top;
  std::string output_dir = ".";
  int report_interval = 0;
  double audit_tol = 1e-12;  // largest accepted relative SRD mass change per pass
  std::optional<double> gamma;
  std::string scheme = "mol";

  // Problem parameters.
  std::optional<double> mach;
  std::optional<double> x_shock;
  std::optional<double> adv_a, adv_b;
  std::optional<std::string> profile;

  // Domain and geometry overrides.
  std::optional<double> x_lo, x_hi, y_lo, y_hi;
  std::optional<std::string> geometry;  // full | circle | halfplane | annulus
  double geom_cx = 0.0, geom_cy = 0.0;
  double geom_r = 0.0, geom_r2 = 0.0;
  double geom_nx = 0.0, geom_ny = 1.0;
  std::string geom_keep = "outside";

  bool steady() const { return problem == "vortex" && !t_final; }
};

/// Throws ParseError (line numbers are 1-based) or ValidationError.
SolverConfig parse_config(const std::string& text);
SolverConfig load_config(const std::string& path);

GradientMode parse_gradient_mode(const std::string& name);
const char* to_string(GradientMode mode);

/// The problem described by the config, overrides applied.
ProblemSpec make_problem(const SolverConfig& config);

}  // namespace cutsrd
