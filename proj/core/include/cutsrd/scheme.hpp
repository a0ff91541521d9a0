#pragma once

// Method-of-lines finite-volume evolution on the cut-cell mesh: LLF fluxes
// at face midpoints, pressure walls on embedded boundaries, ghost filling,
// and a Heun step that redistributes each provisional stage.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutsrd/fields.hpp"
#include "cutsrd/mesh.hpp"
#include "cutsrd/recon.hpp"
#include "cutsrd/srd.hpp"

namespace cutsrd {

struct Primitive {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

Primitive cons_to_prim(std::span<const double> q, double gamma);
std::array<double, 4> prim_to_cons(const Primitive& w, double gamma);
double pressure(std::span<const double> q, double gamma);
double sound_speed(double rho, double p, double gamma);

/// Normal Euler flux. Throws NonPhysicalState for rho <= 0 or p < 0.
std::array<double, 4> euler_flux(std::span<const double> q, Vec2 n, double gamma);

struct EulerPhysics {
  static constexpr int kComp = 4;
  double gamma = 1.4;

  void flux(const double* q, Vec2 n, double* f) const;
  /// |u.n| + c
  double wavespeed(const double* q, Vec2 n) const;
  /// (|u| + c, |v| + c)
  Vec2 speeds(const double* q) const;
  bool physical(const double* q) const;
  /// Pressure-only flux per unit length; `qb` is the reconstructed boundary
  /// state, `qc` the cell average used as fallback.
  void wall_flux(const double* qb, const double* qc, Vec2 n, double* f) const;
  /// Momentum components flipped by reflective x- and y-edges.
  static constexpr int kMomX = 1;
  static constexpr int kMomY = 2;
};

struct AdvectionPhysics {
  static constexpr int kComp = 1;
  double a = 1.0;
  double b = 0.0;

  void flux(const double* q, Vec2 n, double* f) const { f[0] = (a * n.x + b * n.y) * q[0]; }
  double wavespeed(const double*, Vec2 n) const { return std::abs(a * n.x + b * n.y); }
  Vec2 speeds(const double*) const { return {std::abs(a), std::abs(b)}; }
  bool physical(const double* q) const { return std::isfinite(q[0]); }
  void wall_flux(const double* qb, const double*, Vec2 n, double* f) const {
    f[0] = (a * n.x + b * n.y) * qb[0];
  }
  static constexpr int kMomX = -1;
  static constexpr int kMomY = -1;
};

/// Local Lax-Friedrichs flux per unit length across normal n (pointing from
/// the left state to the right one).
template <class Physics>
void llf_flux(const Physics& phys, const double* ql, const double* qr, Vec2 n, double* out) {
  constexpr int nc = Physics::kComp;
  double fl[nc], fr[nc];
  phys.flux(ql, n, fl);
  phys.flux(qr, n, fr);
  const double lam = std::max(phys.wavespeed(ql, n), phys.wavespeed(qr, n));
  for (int k = 0; k < nc; ++k) out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * lam * (qr[k] - ql[k]);
}

enum class BcKind { DirichletExact, Transmissive, Reflective, Periodic };

BcKind parse_bc(const std::string& name);
const char* to_string(BcKind kind);

/// Exact (or prescribed) conserved state at a point and time.
using ExactState = std::function<void(Vec2, double, std::span<double>)>;

struct BoundaryConditions {
  BcKind left = BcKind::Transmissive;
  BcKind right = BcKind::Transmissive;
  BcKind bottom = BcKind::Transmissive;
  BcKind top = BcKind::Transmissive;
  ExactState exact;
};

/// Fills every ghost cell: x-edges first over interior rows, then y-edges over
/// full padded rows (corners included). `mom_x`/`mom_y` name the component
/// negated by reflective edges (-1 for none).
void fill_ghosts(const CutCellMesh& mesh, StateField& U, const BoundaryConditions& bc, double t,
                 int mom_x, int mom_y);

/// Per-step audit data.
struct StepAudit {
  /// Largest relative change of sum V*U caused by either SRD pass.
  double srd_mass_defect = 0.0;
  /// Max |delta rho| (component 0) over interior flow cells.
  double max_update = 0.0;
};

template <class Physics>
class MolSolver {
 public:
  static constexpr int kComp = Physics::kComp;

  /// `plan` may be null, giving plain Heun without redistribution.
  MolSolver(const CutCellMesh& mesh, const SrdPlan* plan, Physics physics, BoundaryConditions bc,
            GradientMode mode, bool limiting, SrdOrder srd_order = SrdOrder::Second);

  const CutCellMesh& mesh() const { return *mesh_; }
  const Physics& physics() const { return phys_; }
  const BoundaryConditions& bc() const { return bc_; }

  /// Fills ghosts of U, computes base gradients and writes dU/dt for every
  /// interior flow cell (zero elsewhere).
  void residual(StateField& U, double t, StateField& dudt);

  /// Gradients from the most recent residual evaluation.
  const GradientField& gradients() const { return grads_; }

  double stable_dt(const StateField& U, double cfl) const;

  /// One Heun step with redistribution of both provisional stages.
  StepAudit step(StateField& U, double t, double dt);

  /// Sum of V*U per component over interior flow cells.
  std::vector<double> totals(const StateField& U) const;

  /// Throws NonPhysicalState naming `stage` if any interior flow cell fails.
  void check_physical(const StateField& U, const std::string& stage) const;

  /// Value of the linear reconstruction of cell `id` at point p.
  void reconstruct(const StateField& U, int id, Vec2 p, double* out) const;

 private:
  double srd_pass(StateField& U);

  const CutCellMesh* mesh_;
  Physics phys_;
  BoundaryConditions bc_;
  BaseGradientOperator gradop_;
  bool limiting_;
  std::optional<Redistributor> srd_;
  GradientField grads_;
  StateField work_, stage_, dudt_;
};

extern template class MolSolver<EulerPhysics>;
extern template class MolSolver<AdvectionPhysics>;

/// First-order upwind update for a > 0 on a periodic 1D grid of cell sizes h.
std::vector<double> upwind_step_1d(std::span<const double> h, std::span<const double> U, double a,
                                   double dt);

}  // namespace cutsrd
