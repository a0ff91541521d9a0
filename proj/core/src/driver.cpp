#include "cutsrd/driver.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cutsrd/srd.hpp"

namespace cutsrd {

namespace {

struct ProfilePoint {
  double s, x, y, rho;
};

struct Outcome {
  RunReport report;
  std::vector<ProfilePoint> profile;
  std::vector<double> defects;  // per step
};

// Position along the embedded boundary used to order the profile.
double arc_parameter(const ImplicitGeometry& g, Vec2 p) {
  return std::visit(
      [p](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle> || std::is_same_v<T, QuarterAnnulus>) {
          const Vec2 d = p - s.center;
          return std::atan2(d.y, d.x) * 180.0 / std::numbers::pi;
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          const Vec2 t{s.inward_normal.y, -s.inward_normal.x};
          return dot(p - s.point, t);
        } else {
          return p.x;
        }
      },
      g.primary());
}

std::ofstream open_csv(const SolverConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.output_dir);
  std::ofstream f(std::filesystem::path(c.output_dir) / name);
  if (!f) throw Error("cannot write " + name + " in " + c.output_dir);
  f << std::setprecision(15);
  return f;
}

template <class Physics>
Outcome march(const SolverConfig& cfg, const ProblemSpec& spec, const CutCellMesh& mesh,
              const SrdPlan& plan, Physics phys, StateField& U, std::ostream* log) {
  const auto t0 = std::chrono::steady_clock::now();
  MolSolver<Physics> solver(mesh, cfg.srd ? &plan : nullptr, phys, spec.bc, cfg.gradient_mode,
                            cfg.limiter, cfg.srd_order);
  Outcome out;
  RunReport& r = out.report;
  r.steady = cfg.steady();
  r.totals.push_back(solver.totals(U));
  const int max_steps = cfg.max_steps ? cfg.max_steps : (r.steady ? 200 * mesh.nx() : INT_MAX);
  const double t_end = spec.t_final;

  const auto track = [&](const StateField& V) {
    if constexpr (Physics::kComp == 4) {
      for (int id : mesh.flow_cells()) {
        const double rho = V.at(id, 0);
        const double p = pressure(V[id], phys.gamma);
        r.rho_min = std::min(r.rho_min, rho);
        r.rho_max = std::max(r.rho_max, rho);
        r.p_min = std::min(r.p_min, p);
        r.p_max = std::max(r.p_max, p);
      }
    } else {
      for (int id : mesh.flow_cells()) {
        r.rho_min = std::min(r.rho_min, V.at(id, 0));
        r.rho_max = std::max(r.rho_max, V.at(id, 0));
      }
    }
  };
  r.rho_min = r.p_min = std::numeric_limits<double>::infinity();
  r.rho_max = r.p_max = -std::numeric_limits<double>::infinity();
  track(U);

  double t = 0.0;
  while (r.steps < max_steps) {
    if (!r.steady && t >= t_end * (1.0 - 1e-14)) break;
    double dt = solver.stable_dt(U, cfg.cfl);
    if (!r.steady) dt = std::min(dt, t_end - t);
    StepAudit audit;
    try {
      audit = solver.step(U, t, dt);
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState("step " + std::to_string(r.steps + 1) + ": " + e.what(), e.cell);
    }
    t += dt;
    ++r.steps;
    r.last_update = audit.max_update;
    r.max_srd_defect = std::max(r.max_srd_defect, audit.srd_mass_defect);
    out.defects.push_back(audit.srd_mass_defect);
    r.totals.push_back(solver.totals(U));
    track(U);
    if (log && cfg.report_interval > 0 && r.steps % cfg.report_interval == 0) {
      *log << "step " << r.steps << "  t=" << t << "  dt=" << dt
           << "  max|drho|=" << audit.max_update << "\n";
    }
    if (r.steady && audit.max_update < cfg.steady_tol) {
      r.converged = true;
      break;
    }
  }
  if (!r.steady) r.converged = t >= t_end * (1.0 - 1e-14);
  r.time = t;

  // Reconstructed density at the chord midpoints of the final state.
  StateField scratch;
  solver.residual(U, t, scratch);
  double q[Physics::kComp];
  for (int id : mesh.cut_cells()) {
    const CellGeom& c = mesh.cell(id);
    if (!(c.boundary_length > 0.0)) continue;
    solver.reconstruct(U, id, c.boundary_midpoint, q);
    out.profile.push_back({arc_parameter(spec.geometry, c.boundary_midpoint),
                           c.boundary_midpoint.x, c.boundary_midpoint.y, q[0]});
  }
  std::sort(out.profile.begin(), out.profile.end(),
            [](const ProfilePoint& a, const ProfilePoint& b) { return a.s < b.s; });
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

struct Prepared {
  ProblemSpec spec;
  CutCellMesh mesh;
  SrdPlan plan;
};

Prepared prepare(const SolverConfig& cfg) {
  Prepared p;
  p.spec = make_problem(cfg);
  p.mesh = generate_mesh(BaseGrid::make(p.spec.lo, p.spec.hi, p.spec.nx, p.spec.ny),
                         p.spec.geometry);
  p.plan = build_plan(p.mesh, cfg.srd_threshold);
  return p;
}

Outcome simulate_impl(const SolverConfig& cfg, Prepared& p, StateField& U, std::ostream* log) {
  U = init_field(p.mesh, p.spec);
  Outcome out;
  if (p.spec.is_euler()) {
    out = march(cfg, p.spec, p.mesh, p.plan, EulerPhysics{p.spec.gamma()}, U, log);
  } else {
    const auto& a = std::get<Advection>(p.spec.variant);
    out = march(cfg, p.spec, p.mesh, p.plan, AdvectionPhysics{a.a, a.b}, U, log);
  }
  RunReport& r = out.report;
  r.problem = p.spec.name();
  r.nx = p.mesh.nx();
  r.ny = p.mesh.ny();
  r.min_volume_fraction = p.mesh.min_volume_fraction();
  r.cut_cells = static_cast<int>(p.mesh.cut_cells().size());
  for (const Neighborhood& h : p.plan.hoods) {
    if (h.kind != HoodKind::Self) ++r.stabilized_cells;
  }
  if (p.spec.has_exact()) {
    const auto f = exact_scalar(p.spec);
    const double t = r.time;
    r.errors = l1_errors(p.mesh, U, [&](Vec2 x) { return f(x, t); });
    r.has_errors = true;
  }
  return out;
}

}  // namespace

RunResult simulate(const SolverConfig& config, std::ostream* log) {
  Prepared p = prepare(config);
  StateField U;
  Outcome out = simulate_impl(config, p, U, log);
  return {std::move(out.report), std::move(p.mesh), std::move(U)};
}

RunReport run(const SolverConfig& config, std::ostream* log) {
  Prepared p = prepare(config);
  StateField U;
  Outcome out = simulate_impl(config, p, U, log);
  const RunReport& r = out.report;
  const CutCellMesh& mesh = p.mesh;
  const bool euler = p.spec.is_euler();
  const double gamma = p.spec.gamma();

  {
    auto f = open_csv(config, "solution.csv");
    f << "i,j,cx,cy,V,rho,u,v,p\n";
    for (int id : mesh.flow_cells()) {
      const auto [i, j] = mesh.ij(id);
      const CellGeom& c = mesh.cell(id);
      f << i << ',' << j << ',' << c.centroid.x << ',' << c.centroid.y << ',' << c.volume << ',';
      if (euler) {
        const Primitive w = cons_to_prim(U[id], gamma);
        f << w.rho << ',' << w.u << ',' << w.v << ',' << w.p << '\n';
      } else {
        f << U.at(id, 0) << ",0,0,0\n";
      }
    }
  }
  {
    auto f = open_csv(config, "boundary_profile.csv");
    f << "s,x,y,rho\n";
    for (const ProfilePoint& q : out.profile) {
      f << q.s << ',' << q.x << ',' << q.y << ',' << q.rho << '\n';
    }
  }
  {
    auto f = open_csv(config, "audit.csv");
    const std::size_t nc = r.totals.front().size();
    f << "step,srd_defect";
    for (std::size_t k = 0; k < nc; ++k) f << ",total" << k;
    f << '\n';
    for (std::size_t s = 0; s < r.totals.size(); ++s) {
      f << s << ',' << (s == 0 ? 0.0 : out.defects[s - 1]);
      for (double v : r.totals[s]) f << ',' << v;
      f << '\n';
    }
  }
  {
    auto f = open_csv(config, "summary.txt");
    write_summary(f, r);
  }
  if (r.max_srd_defect > config.audit_tol) {
    std::ostringstream msg;
    msg << "redistribution changed the conserved totals by " << r.max_srd_defect
        << " (relative), above " << config.audit_tol;
    throw AuditFailure(msg.str());
  }
  return r;
}

std::vector<ConvergenceRow> converge(const SolverConfig& config, int levels, std::ostream* log,
                                     bool write) {
  if (levels < 1) throw ValidationError("levels", "must be at least 1");
  {
    const ProblemSpec probe = make_problem(config);
    if (!probe.has_exact()) {
      throw ValidationError("problem", std::string(probe.name()) + " has no exact solution");
    }
  }
  std::vector<ConvergenceRow> rows;
  for (int k = 0; k < levels; ++k) {
    SolverConfig c = config;
    const ProblemSpec base = make_problem(config);
    c.nx = base.nx << k;
    c.ny = base.ny << k;
    Prepared p = prepare(c);
    StateField U;
    const Outcome out = simulate_impl(c, p, U, nullptr);
    ConvergenceRow row;
    row.h = p.mesh.grid().dx();
    row.n = c.nx;
    row.l1_volume = out.report.errors.volume;
    row.l1_boundary = out.report.errors.boundary;
    row.steps = out.report.steps;
    row.converged = out.report.converged;
    if (!rows.empty()) {
      row.ratio_volume = observed_rate(rows.back().l1_volume, row.l1_volume);
      row.ratio_boundary = rows.back().l1_boundary > 0.0 && row.l1_boundary > 0.0
                               ? observed_rate(rows.back().l1_boundary, row.l1_boundary)
                               : 0.0;
    }
    if (log) {
      *log << "N=" << row.n << "  steps=" << row.steps << (row.converged ? "" : " (not converged)")
           << "  L1 volume=" << row.l1_volume << "  L1 boundary=" << row.l1_boundary << "\n";
    }
    rows.push_back(row);
  }
  if (write) {
    auto f = open_csv(config, "convergence.csv");
    f << "h,N,L1_volume,ratio_volume,L1_boundary,ratio_boundary\n";
    for (const auto& r : rows) {
      f << r.h << ',' << r.n << ',' << r.l1_volume << ',' << r.ratio_volume << ','
        << r.l1_boundary << ',' << r.ratio_boundary << '\n';
    }
  }
  return rows;
}

MeshSummary summarize_mesh(const CutCellMesh& mesh, const SrdPlan& plan) {
  MeshSummary s;
  s.flow_cells = static_cast<int>(mesh.flow_cells().size());
  s.cut_cells = static_cast<int>(mesh.cut_cells().size());
  s.degenerate_cuts = mesh.degenerate_cuts();
  s.min_fraction = mesh.min_volume_fraction();
  std::vector<double> fr;
  for (int id : mesh.cut_cells()) fr.push_back(mesh.volume_fraction(id));
  if (!fr.empty()) {
    std::sort(fr.begin(), fr.end());
    const std::size_t m = fr.size() / 2;
    s.median_cut_fraction = fr.size() % 2 ? fr[m] : 0.5 * (fr[m - 1] + fr[m]);
  }
  for (const char* k : {"self", "normal", "centered3", "centered5"}) s.hood_kinds[k] = 0;
  double vhat = 0.0;
  for (const Neighborhood& h : plan.hoods) {
    ++s.hood_kinds[to_string(h.kind)];
    vhat += h.weighted_volume;
  }
  s.max_overlap = plan.max_overlap();
  const double v = mesh.flow_volume();
  s.telescoping_defect = std::abs(vhat - v) / v;
  return s;
}

MeshSummary mesh_report(const SolverConfig& config) {
  const Prepared p = prepare(config);
  const CutCellMesh& mesh = p.mesh;
  {
    auto f = open_csv(config, "cells.csv");
    f << "i,j,class,volume,vol_fraction,cx,cy,boundary_length,boundary_nx,boundary_ny\n";
    for (int j = 0; j < mesh.ny(); ++j) {
      for (int i = 0; i < mesh.nx(); ++i) {
        const int id = mesh.id(i, j);
        const CellGeom& c = mesh.cell(id);
        const char* cls = c.cls == CellClass::Full ? "full" : c.cls == CellClass::Cut ? "cut" : "solid";
        f << i << ',' << j << ',' << cls << ',' << c.volume << ',' << mesh.volume_fraction(id)
          << ',' << c.centroid.x << ',' << c.centroid.y << ',' << c.boundary_length << ','
          << c.boundary_normal.x << ',' << c.boundary_normal.y << '\n';
      }
    }
  }
  {
    auto f = open_csv(config, "cells_geo.csv");
    f << "i,j,vertices\n";
    for (int id : mesh.flow_cells()) {
      const auto [i, j] = mesh.ij(id);
      f << i << ',' << j << ',';
      std::vector<Vec2> verts;
      if (const CellPolygon* poly = mesh.polygon(id)) {
        verts = poly->vertices;
      } else {
        const Rect r = mesh.grid().cell_rect(i, j);
        verts = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
      }
      for (std::size_t k = 0; k < verts.size(); ++k) {
        f << (k ? ";" : "") << verts[k].x << ' ' << verts[k].y;
      }
      f << '\n';
    }
  }
  {
    auto f = open_csv(config, "hoods.csv");
    f << "i,j,kind,members,vhat,xhat,yhat,N\n";
    for (const Neighborhood& h : p.plan.hoods) {
      const auto [i, j] = mesh.ij(h.generator);
      f << i << ',' << j << ',' << to_string(h.kind) << ',' << h.members.size() << ','
        << h.weighted_volume << ',' << h.weighted_centroid.x << ',' << h.weighted_centroid.y
        << ',' << p.plan.overlap_count[h.generator] << '\n';
    }
  }
  const MeshSummary s = summarize_mesh(mesh, p.plan);
  auto f = open_csv(config, "mesh_summary.txt");
  write_summary(f, s);
  return s;
}

void write_summary(std::ostream& out, const MeshSummary& s) {
  out << "flow_cells: " << s.flow_cells << "\n"
      << "cut_cells: " << s.cut_cells << "\n"
      << "degenerate_cuts: " << s.degenerate_cuts << "\n"
      << "min_volume_fraction: " << s.min_fraction << "\n"
      << "median_cut_fraction: " << s.median_cut_fraction << "\n";
  for (const auto& [k, v] : s.hood_kinds) out << "hoods_" << k << ": " << v << "\n";
  out << "max_overlap: " << s.max_overlap << "\n"
      << "telescoping_defect: " << s.telescoping_defect << "\n";
}

void write_summary(std::ostream& out, const RunReport& r) {
  out << "problem: " << r.problem << "\n"
      << "grid: " << r.nx << " x " << r.ny << "\n"
      << "steps: " << r.steps << "\n"
      << "time: " << r.time << "\n";
  if (r.steady) {
    out << "steady_converged: " << (r.converged ? "yes" : "no") << "\n"
        << "last_max_update: " << r.last_update << "\n";
  }
  out << "cut_cells: " << r.cut_cells << "\n"
      << "stabilized_cells: " << r.stabilized_cells << "\n"
      << "min_volume_fraction: " << r.min_volume_fraction << "\n"
      << "rho_range: " << r.rho_min << " " << r.rho_max << "\n";
  if (r.problem != "advection") out << "p_range: " << r.p_min << " " << r.p_max << "\n";
  out << "max_srd_mass_defect: " << r.max_srd_defect << "\n";
  if (!r.totals.empty()) {
    out << "totals_initial:";
    for (double v : r.totals.front()) out << " " << v;
    out << "\ntotals_final:";
    for (double v : r.totals.back()) out << " " << v;
    out << "\n";
  }
  if (r.has_errors) {
    out << "l1_volume: " << r.errors.volume << "\n"
        << "l1_boundary: " << r.errors.boundary << "\n";
  }
  out << "wall_seconds: " << r.wall_seconds << "\n";
}

}  // namespace cutsrd
