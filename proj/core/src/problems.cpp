#include "cutsrd/problems.hpp"

#include <cmath>
#include <numbers>

#include "cutsrd/errors.hpp"

namespace cutsrd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double advection_profile(Advection::Profile profile, Vec2 p) {
  if (profile == Advection::Profile::Constant) return 1.0;
  const double two_pi = 2.0 * std::numbers::pi;
  return 1.0 + 0.5 * std::sin(two_pi * p.x) * std::sin(two_pi * p.y);
}

void put(std::span<double> q, const Primitive& w, double gamma) {
  const auto c = prim_to_cons(w, gamma);
  for (int k = 0; k < 4; ++k) q[k] = c[k];
}

}  // namespace

bool ProblemSpec::has_exact() const {
  return std::holds_alternative<SupersonicVortex>(variant) ||
         std::holds_alternative<Advection>(variant);
}

double ProblemSpec::gamma() const {
  return std::visit(Overloaded{[](const Advection&) { return 1.4; },
                               [](const auto& p) { return p.gamma; }},
                    variant);
}

const char* ProblemSpec::name() const {
  return std::visit(Overloaded{[](const SupersonicVortex&) { return "vortex"; },
                               [](const CylinderShock&) { return "cylinder"; },
                               [](const DoubleMach&) { return "double_mach"; },
                               [](const Advection&) { return "advection"; }},
                    variant);
}

Primitive vortex_exact(double x, double y, const SupersonicVortex& p) {
  const double r = std::hypot(x, y);
  if (r < 1e-12) throw OriginSingular("vortex solution is singular at the origin");
  const double ratio = p.r_inner / r;
  const double m2 = p.mach_inner * p.mach_inner;
  const double base = 1.0 + 0.5 * (p.gamma - 1.0) * m2 * (1.0 - ratio * ratio);
  Primitive w;
  w.rho = p.rho_inner * std::pow(base, 1.0 / (p.gamma - 1.0));
  // The sound speed on the inner circle is 1, so a_i M_i = M_i.
  const double speed = p.mach_inner * ratio;
  const double theta = std::atan2(y, x);
  w.u = speed * std::sin(theta);
  w.v = -speed * std::cos(theta);
  w.p = std::pow(w.rho, p.gamma) / p.gamma;
  return w;
}

ShockJump shock_jump(double mach, const Primitive& pre, double gamma) {
  const double c1 = std::sqrt(gamma * pre.p / pre.rho);
  const double m2 = mach * mach;
  const double rho_ratio = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
  const double p_ratio = 1.0 + 2.0 * gamma / (gamma + 1.0) * (m2 - 1.0);
  ShockJump s;
  s.speed = pre.u + mach * c1;
  s.post.rho = pre.rho * rho_ratio;
  s.post.p = pre.p * p_ratio;
  s.post.u = pre.u + (s.speed - pre.u) * (1.0 - 1.0 / rho_ratio);
  s.post.v = pre.v;
  return s;
}

ProblemSpec vortex_problem(int nx, int ny) {
  ProblemSpec s;
  const SupersonicVortex v;
  s.variant = v;
  s.lo = {0.0, 0.0};
  s.hi = {1.43, 1.4301};
  s.nx = nx;
  s.ny = ny;
  s.geometry = ImplicitGeometry(QuarterAnnulus{{0.0, 0.0}, v.r_inner, v.r_outer});
  s.bc.left = s.bc.right = s.bc.bottom = s.bc.top = BcKind::DirichletExact;
  s.bc.exact = exact_state(s);
  return s;
}

ProblemSpec cylinder_problem(int nx, int ny) {
  ProblemSpec s;
  const CylinderShock c;
  s.variant = c;
  s.lo = {0.0, 0.0};
  s.hi = {1.00001, 1.0};
  s.nx = nx;
  s.ny = ny;
  s.geometry = ImplicitGeometry(Circle{c.center, c.radius, Circle::Keep::Outside});
  s.bc.left = BcKind::DirichletExact;
  s.bc.right = BcKind::Transmissive;
  s.bc.bottom = s.bc.top = BcKind::Reflective;
  s.bc.exact = exact_state(s);
  s.t_final = 0.25;
  return s;
}

ProblemSpec double_mach_problem(int nx, int ny) {
  ProblemSpec s;
  const DoubleMach d;
  s.variant = d;
  s.lo = {0.0, 0.0};
  s.hi = {3.0, 1.75};
  s.nx = nx;
  s.ny = ny;
  const double a = d.angle_deg * std::numbers::pi / 180.0;
  s.geometry = ImplicitGeometry(HalfPlane{{d.x_wall, 0.0}, {-std::sin(a), std::cos(a)}});
  s.bc.left = s.bc.bottom = s.bc.top = BcKind::DirichletExact;
  s.bc.right = BcKind::Transmissive;
  s.bc.exact = exact_state(s);
  s.t_final = 0.2;
  return s;
}

ProblemSpec advection_problem(int nx, int ny, double a, double b) {
  ProblemSpec s;
  s.variant = Advection{a, b, Advection::Profile::Sine};
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.nx = nx;
  s.ny = ny;
  s.geometry = ImplicitGeometry(FullDomain{});
  s.bc.left = s.bc.right = s.bc.bottom = s.bc.top = BcKind::Periodic;
  s.bc.exact = exact_state(s);
  s.t_final = 1.0;
  return s;
}

ExactState exact_state(const ProblemSpec& spec) {
  return std::visit(
      Overloaded{
          [](const SupersonicVortex& v) -> ExactState {
            return [v](Vec2 p, double, std::span<double> q) {
              put(q, vortex_exact(p.x, p.y, v), v.gamma);
            };
          },
          [](const CylinderShock& c) -> ExactState {
            const ShockJump j = shock_jump(c.mach, c.ambient, c.gamma);
            return [c, j](Vec2 p, double t, std::span<double> q) {
              put(q, p.x < c.x_shock + j.speed * t ? j.post : c.ambient, c.gamma);
            };
          },
          [](const DoubleMach& d) -> ExactState {
            const ShockJump j = shock_jump(d.mach, d.ambient, d.gamma);
            return [d, j](Vec2 p, double t, std::span<double> q) {
              put(q, p.x < d.x_wall + j.speed * t ? j.post : d.ambient, d.gamma);
            };
          },
          [](const Advection& a) -> ExactState {
            return [a](Vec2 p, double t, std::span<double> q) {
              q[0] = advection_profile(a.profile, {p.x - a.a * t, p.y - a.b * t});
            };
          },
      },
      spec.variant);
}

std::function<double(Vec2, double)> exact_scalar(const ProblemSpec& spec) {
  ExactState f = exact_state(spec);
  const int nc = spec.is_euler() ? 4 : 1;
  return [f, nc](Vec2 p, double t) {
    double q[4];
    f(p, t, std::span<double>(q, nc));
    return q[0];
  };
}

StateField init_field(const CutCellMesh& mesh, const ProblemSpec& spec) {
  const int nc = spec.is_euler() ? 4 : 1;
  StateField U(mesh.size(), nc);
  const ExactState f = exact_state(spec);
  for (int id = 0; id < mesh.size(); ++id) {
    const CellGeom& c = mesh.cell(id);
    if (!c.is_flow()) continue;
    f(c.centroid, 0.0, U[id]);
  }
  return U;
}

L1Errors l1_errors(const CutCellMesh& mesh, const StateField& U,
                   const std::function<double(Vec2)>& exact) {
  L1Errors e;
  for (int id : mesh.flow_cells()) {
    const CellGeom& c = mesh.cell(id);
    const double err = std::abs(U.at(id, 0) - exact(c.centroid));
    e.volume += c.volume * err;
    if (c.cls == CellClass::Cut) e.boundary += c.boundary_length * err;
  }
  return e;
}

double observed_rate(double e_coarse, double e_fine) {
  if (e_fine == 0.0) throw DivideByZero("observed rate with zero fine-grid error");
  return e_coarse / e_fine;
}

}  // namespace cutsrd
