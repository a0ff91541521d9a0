#include "cutsrd/scheme.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cutsrd/errors.hpp"

namespace cutsrd {

Primitive cons_to_prim(std::span<const double> q, double gamma) {
  Primitive w;
  w.rho = q[0];
  w.u = q[1] / q[0];
  w.v = q[2] / q[0];
  w.p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * w.u + q[2] * w.v));
  return w;
}

std::array<double, 4> prim_to_cons(const Primitive& w, double gamma) {
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

double pressure(std::span<const double> q, double gamma) {
  return (gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
}

double sound_speed(double rho, double p, double gamma) { return std::sqrt(gamma * p / rho); }

std::array<double, 4> euler_flux(std::span<const double> q, Vec2 n, double gamma) {
  const double p = pressure(q, gamma);
  if (!(q[0] > 0.0) || !(p >= 0.0)) {
    throw NonPhysicalState("Euler flux of a state with rho=" + std::to_string(q[0]) +
                           ", p=" + std::to_string(p));
  }
  std::array<double, 4> f{};
  EulerPhysics{gamma}.flux(q.data(), n, f.data());
  return f;
}

void EulerPhysics::flux(const double* q, Vec2 n, double* f) const {
  const double rho = q[0];
  const double u = q[1] / rho, v = q[2] / rho;
  const double p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * u + q[2] * v));
  const double un = u * n.x + v * n.y;
  f[0] = rho * un;
  f[1] = q[1] * un + p * n.x;
  f[2] = q[2] * un + p * n.y;
  f[3] = (q[3] + p) * un;
}

double EulerPhysics::wavespeed(const double* q, Vec2 n) const {
  const double rho = q[0];
  const double u = q[1] / rho, v = q[2] / rho;
  const double p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * u + q[2] * v));
  return std::abs(u * n.x + v * n.y) + std::sqrt(gamma * p / rho);
}

Vec2 EulerPhysics::speeds(const double* q) const {
  const double rho = q[0];
  const double u = q[1] / rho, v = q[2] / rho;
  const double p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * u + q[2] * v));
  const double c = std::sqrt(gamma * p / rho);
  return {std::abs(u) + c, std::abs(v) + c};
}

bool EulerPhysics::physical(const double* q) const {
  if (!(q[0] > 0.0) || !std::isfinite(q[0])) return false;
  const double p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
  return p > 0.0 && std::isfinite(p);
}

void EulerPhysics::wall_flux(const double* qb, const double* qc, Vec2 n, double* f) const {
  const auto p_of = [this](const double* q) {
    return (gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
  };
  double p = qb[0] > 0.0 ? p_of(qb) : -1.0;
  if (!(p > 0.0)) p = p_of(qc);
  if (!(p > 0.0)) throw NonPhysicalState("non-positive wall pressure");
  f[0] = 0.0;
  f[1] = p * n.x;
  f[2] = p * n.y;
  f[3] = 0.0;
}

BcKind parse_bc(const std::string& name) {
  if (name == "dirichlet_exact") return BcKind::DirichletExact;
  if (name == "transmissive") return BcKind::Transmissive;
  if (name == "reflective") return BcKind::Reflective;
  if (name == "periodic") return BcKind::Periodic;
  throw UnknownBC("unknown boundary condition '" + name + "'");
}

const char* to_string(BcKind kind) {
  switch (kind) {
    case BcKind::DirichletExact: return "dirichlet_exact";
    case BcKind::Transmissive: return "transmissive";
    case BcKind::Reflective: return "reflective";
    case BcKind::Periodic: return "periodic";
  }
  return "?";
}

namespace {

// Fills the ghost cell `dst` of an edge. `src_mirror` is the interior cell
// mirrored across the edge, `src_near` the nearest interior flow cell along
// the line normal to it, `src_wrap` the periodic image.
void fill_one(const CutCellMesh& mesh, StateField& U, const BoundaryConditions& bc, BcKind kind,
              double t, int dst, int src_mirror, int src_near, int src_wrap, int mom) {
  const int nc = U.ncomp();
  switch (kind) {
    case BcKind::DirichletExact: {
      if (!bc.exact) throw UnknownBC("dirichlet_exact boundary needs an exact solution");
      const CellGeom& c = mesh.cell(dst);
      if (!c.is_flow()) return;
      bc.exact(c.centroid, t, U[dst]);
      return;
    }
    case BcKind::Transmissive:
      if (src_near < 0) return;
      for (int k = 0; k < nc; ++k) U.at(dst, k) = U.at(src_near, k);
      return;
    case BcKind::Reflective:
      for (int k = 0; k < nc; ++k) U.at(dst, k) = U.at(src_mirror, k);
      if (mom >= 0) U.at(dst, mom) = -U.at(dst, mom);
      return;
    case BcKind::Periodic:
      for (int k = 0; k < nc; ++k) U.at(dst, k) = U.at(src_wrap, k);
      return;
  }
}

}  // namespace

void fill_ghosts(const CutCellMesh& mesh, StateField& U, const BoundaryConditions& bc, double t,
                 int mom_x, int mom_y) {
  const int g = CutCellMesh::kGhost;
  const int nx = mesh.nx(), ny = mesh.ny();

  for (int j = 0; j < ny; ++j) {
    int near_l = -1, near_r = -1;
    for (int i = 0; i < nx && near_l < 0; ++i) {
      if (mesh.cell(i, j).is_flow()) near_l = mesh.id(i, j);
    }
    for (int i = nx - 1; i >= 0 && near_r < 0; --i) {
      if (mesh.cell(i, j).is_flow()) near_r = mesh.id(i, j);
    }
    for (int k = 1; k <= g; ++k) {
      fill_one(mesh, U, bc, bc.left, t, mesh.id(-k, j), mesh.id(k - 1, j), near_l,
               mesh.id(nx - k, j), mom_x);
      fill_one(mesh, U, bc, bc.right, t, mesh.id(nx - 1 + k, j), mesh.id(nx - k, j), near_r,
               mesh.id(k - 1, j), mom_x);
    }
  }
  for (int i = -g; i < nx + g; ++i) {
    int near_b = -1, near_t = -1;
    for (int j = 0; j < ny && near_b < 0; ++j) {
      if (mesh.cell(i, j).is_flow()) near_b = mesh.id(i, j);
    }
    for (int j = ny - 1; j >= 0 && near_t < 0; --j) {
      if (mesh.cell(i, j).is_flow()) near_t = mesh.id(i, j);
    }
    for (int k = 1; k <= g; ++k) {
      fill_one(mesh, U, bc, bc.bottom, t, mesh.id(i, -k), mesh.id(i, k - 1), near_b,
               mesh.id(i, ny - k), mom_y);
      fill_one(mesh, U, bc, bc.top, t, mesh.id(i, ny - 1 + k), mesh.id(i, ny - k), near_t,
               mesh.id(i, k - 1), mom_y);
    }
  }
}

// ---------------------------------------------------------------------------

template <class Physics>
MolSolver<Physics>::MolSolver(const CutCellMesh& mesh, const SrdPlan* plan, Physics physics,
                              BoundaryConditions bc, GradientMode mode, bool limiting,
                              SrdOrder srd_order)
    : mesh_(&mesh),
      phys_(physics),
      bc_(std::move(bc)),
      gradop_(mesh, mode),
      limiting_(limiting),
      grads_(mesh.size(), kComp) {
  if (plan != nullptr) srd_.emplace(*plan, mode, limiting, srd_order);
}

template <class Physics>
void MolSolver<Physics>::reconstruct(const StateField& U, int id, Vec2 p, double* out) const {
  const Vec2 d = p - mesh_->cell(id).centroid;
  for (int k = 0; k < kComp; ++k) out[k] = U.at(id, k) + dot(grads_.at(id, k), d);
}

template <class Physics>
void MolSolver<Physics>::residual(StateField& U, double t, StateField& dudt) {
  const CutCellMesh& mesh = *mesh_;
  if (dudt.size() != U.size() || dudt.ncomp() != kComp) {
    dudt = StateField(U.size(), kComp);
  } else {
    std::fill(dudt.raw().begin(), dudt.raw().end(), 0.0);
  }
  fill_ghosts(mesh, U, bc_, t, Physics::kMomX, Physics::kMomY);
  for (int id : mesh.flow_cells()) {
    if (!phys_.physical(U[id].data())) {
      const auto [i, j] = mesh.ij(id);
      throw NonPhysicalState("non-physical state in cell (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             id);
    }
  }
  gradop_.compute(U, limiting_, grads_);

  double ql[kComp], qr[kComp], f[kComp];
  const auto face_state = [&](int id, Vec2 p, double* q) {
    reconstruct(U, id, p, q);
    if (!phys_.physical(q)) {
      for (int k = 0; k < kComp; ++k) q[k] = U.at(id, k);
    }
  };

  for (const GridFace& face : mesh.faces()) {
    face_state(face.lo, face.midpoint, ql);
    face_state(face.hi, face.midpoint, qr);
    llf_flux(phys_, ql, qr, face.normal, f);
    for (int k = 0; k < kComp; ++k) {
      const double flux = f[k] * face.length;
      dudt.at(face.lo, k) -= flux;
      dudt.at(face.hi, k) += flux;
    }
  }
  for (const WallFace& wall : mesh.walls()) {
    reconstruct(U, wall.cell, wall.midpoint, ql);
    phys_.wall_flux(ql, U[wall.cell].data(), wall.normal, f);
    for (int k = 0; k < kComp; ++k) dudt.at(wall.cell, k) -= f[k] * wall.length;
  }
  const double full = mesh.full_volume();
  for (int id = 0; id < mesh.size(); ++id) {
    const CellGeom& c = mesh.cell(id);
    if (!c.is_flow() || !mesh.is_interior(id)) {
      for (int k = 0; k < kComp; ++k) dudt.at(id, k) = 0.0;
      continue;
    }
    const double inv = c.cls == CellClass::Full ? 1.0 / full : 1.0 / c.volume;
    for (int k = 0; k < kComp; ++k) dudt.at(id, k) *= inv;
  }
}

template <class Physics>
double MolSolver<Physics>::stable_dt(const StateField& U, double cfl) const {
  double amax = 0.0, bmax = 0.0;
  for (int id : mesh_->flow_cells()) {
    if (!phys_.physical(U[id].data())) {
      throw NonPhysicalState("non-physical state while computing the time step", id);
    }
    const Vec2 s = phys_.speeds(U[id].data());
    amax = std::max(amax, s.x);
    bmax = std::max(bmax, s.y);
  }
  const double rate = amax / mesh_->grid().dx() + bmax / mesh_->grid().dy();
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return cfl / rate;
}

template <class Physics>
std::vector<double> MolSolver<Physics>::totals(const StateField& U) const {
  std::vector<double> s(kComp, 0.0);
  for (int id : mesh_->flow_cells()) {
    const double v = mesh_->cell(id).volume;
    for (int k = 0; k < kComp; ++k) s[k] += v * U.at(id, k);
  }
  return s;
}

template <class Physics>
void MolSolver<Physics>::check_physical(const StateField& U, const std::string& stage) const {
  for (int id : mesh_->flow_cells()) {
    if (!phys_.physical(U[id].data())) {
      const auto [i, j] = mesh_->ij(id);
      throw NonPhysicalState(stage + ": non-physical state in cell (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             id);
    }
  }
}

template <class Physics>
double MolSolver<Physics>::srd_pass(StateField& U) {
  if (!srd_) return 0.0;
  const CutCellMesh& mesh = *mesh_;
  std::vector<double> before(kComp, 0.0), scale(kComp, 0.0), after(kComp, 0.0);
  for (int id : mesh.flow_cells()) {
    const double v = mesh.cell(id).volume;
    for (int k = 0; k < kComp; ++k) {
      before[k] += v * U.at(id, k);
      scale[k] += v * std::abs(U.at(id, k));
    }
  }
  srd_->apply(U);
  for (int id : mesh.flow_cells()) {
    const double v = mesh.cell(id).volume;
    for (int k = 0; k < kComp; ++k) after[k] += v * U.at(id, k);
  }
  double defect = 0.0;
  for (int k = 0; k < kComp; ++k) {
    if (scale[k] > 0.0) defect = std::max(defect, std::abs(after[k] - before[k]) / scale[k]);
    if (!std::isfinite(after[k])) defect = std::numeric_limits<double>::infinity();
  }
  return defect;
}

template <class Physics>
StepAudit MolSolver<Physics>::step(StateField& U, double t, double dt) {
  const CutCellMesh& mesh = *mesh_;
  StepAudit audit;
  work_ = U;
  residual(work_, t, dudt_);
  stage_ = work_;
  for (int id : mesh.flow_cells()) {
    for (int k = 0; k < kComp; ++k) stage_.at(id, k) += dt * dudt_.at(id, k);
  }
  audit.srd_mass_defect = srd_pass(stage_);
  check_physical(stage_, "stage 1");

  residual(stage_, t + dt, dudt_);
  for (int id : mesh.flow_cells()) {
    for (int k = 0; k < kComp; ++k) work_.at(id, k) = stage_.at(id, k) + dt * dudt_.at(id, k);
  }
  audit.srd_mass_defect = std::max(audit.srd_mass_defect, srd_pass(work_));
  check_physical(work_, "stage 2");

  for (int id : mesh.flow_cells()) {
    const double old = U.at(id, 0);
    for (int k = 0; k < kComp; ++k) U.at(id, k) = 0.5 * (U.at(id, k) + work_.at(id, k));
    audit.max_update = std::max(audit.max_update, std::abs(U.at(id, 0) - old));
  }
  return audit;
}

template class MolSolver<EulerPhysics>;
template class MolSolver<AdvectionPhysics>;

std::vector<double> upwind_step_1d(std::span<const double> h, std::span<const double> U, double a,
                                   double dt) {
  const std::size_t n = U.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double up = U[(i + n - 1) % n];
    out[i] = U[i] - a * dt / h[i] * (U[i] - up);
  }
  return out;
}

}  // namespace cutsrd
