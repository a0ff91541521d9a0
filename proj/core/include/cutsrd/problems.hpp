#pragma once

// Benchmark problems: supersonic vortex (exact steady solution), planar
// shocks hitting a cylinder and a ramp, and periodic advection.

#include <functional>
#include <string>
#include <variant>

#include "cutsrd/fields.hpp"
#include "cutsrd/geometry.hpp"
#include "cutsrd/mesh.hpp"
#include "cutsrd/scheme.hpp"

namespace cutsrd {

struct SupersonicVortex {
  double r_inner = 1.0;
  double r_outer = 1.384;
  double mach_inner = 2.25;
  double rho_inner = 1.0;
  double gamma = 1.4;
};

struct CylinderShock {
  double mach = 2.0;
  Vec2 center{0.5, 0.5};
  double radius = 0.15;
  double x_shock = 0.2;
  Primitive ambient{1.4, 0.0, 0.0, 1.0};
  double gamma = 1.4;
};

struct DoubleMach {
  double mach = 10.0;
  double x_wall = 1.0 / 6.0;
  double angle_deg = 30.0;  // ramp inclination
  Primitive ambient{1.4, 0.0, 0.0, 1.0};
  double gamma = 1.4;
};

struct Advection {
  enum class Profile { Constant, Sine };
  double a = 1.0;
  double b = 1.0;
  Profile profile = Profile::Sine;
};

using ProblemVariant = std::variant<SupersonicVortex, CylinderShock, DoubleMach, Advection>;

struct ProblemSpec {
  ProblemVariant variant;
  Vec2 lo;
  Vec2 hi;
  int nx = 0;
  int ny = 0;
  ImplicitGeometry geometry;
  BoundaryConditions bc;
  double t_final = 0.0;  // 0 for steady problems

  bool is_euler() const { return !std::holds_alternative<Advection>(variant); }
  bool has_exact() const;
  double gamma() const;
  const char* name() const;
};

/// Ready-made specs with the domains and boundary conditions used in the
/// benchmark configs.
ProblemSpec vortex_problem(int nx, int ny);
ProblemSpec cylinder_problem(int nx, int ny);
ProblemSpec double_mach_problem(int nx, int ny);
ProblemSpec advection_problem(int nx, int ny, double a = 1.0, double b = 1.0);

/// Throws OriginSingular for r < 1e-12.
Primitive vortex_exact(double x, double y, const SupersonicVortex& p);

struct ShockJump {
  Primitive post;
  double speed = 0.0;
};

/// Normal shock of Mach `mach` running in +x into `pre`.
ShockJump shock_jump(double mach, const Primitive& pre, double gamma);

/// Exact conserved state. For the shock problems this is the undisturbed
/// planar shock, which is what the inflow ghosts need.
ExactState exact_state(const ProblemSpec& spec);

/// Scalar reference density/value, for error norms.
std::function<double(Vec2, double)> exact_scalar(const ProblemSpec& spec);

/// Padded field with every flow cell (ghosts included) set from the
/// problem's initial state at its centroid.
StateField init_field(const CutCellMesh& mesh, const ProblemSpec& spec);

struct L1Errors {
  double volume = 0.0;
  double boundary = 0.0;
};

/// Density (component 0) errors at centroids: sum V|e| over interior flow
/// cells and sum A|e| over cut cells with their chord length A.
L1Errors l1_errors(const CutCellMesh& mesh, const StateField& U,
                   const std::function<double(Vec2)>& exact);

/// e_coarse / e_fine. Throws DivideByZero when e_fine is zero.
double observed_rate(double e_coarse, double e_fine);

}  // namespace cutsrd
