#pragma once

// Run orchestration: transient and steady runs, convergence studies, mesh
// reports and the CSV files they leave behind.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cutsrd/config.hpp"
#include "cutsrd/errors.hpp"
#include "cutsrd/mesh.hpp"
#include "cutsrd/problems.hpp"

namespace cutsrd {

/// A redistribution pass changed the conserved totals beyond roundoff.
class AuditFailure : public Error {
 public:
  using Error::Error;
};

inline constexpr double kSrdAuditTolerance = 1e-12;

struct RunReport {
  std::string problem;
  int nx = 0;
  int ny = 0;
  int steps = 0;
  double time = 0.0;
  bool steady = false;
  bool converged = false;
  double last_update = 0.0;
  /// Per-step totals (sum V*U per component), entry 0 is the initial state.
  std::vector<std::vector<double>> totals;
  double max_srd_defect = 0.0;
  double rho_min = 0.0, rho_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  double min_volume_fraction = 0.0;
  int cut_cells = 0;
  int stabilized_cells = 0;
  double wall_seconds = 0.0;
  bool has_errors = false;
  L1Errors errors;
};

struct RunResult {
  RunReport report;
  CutCellMesh mesh;
  StateField U;
};

/// Runs the config without touching the file system. `log` receives
/// progress lines every `report_interval` steps when non-null.
RunResult simulate(const SolverConfig& config, std::ostream* log = nullptr);

/// simulate() plus solution.csv, boundary_profile.csv, audit.csv and
/// summary.txt in config.output_dir. Throws AuditFailure after writing the
/// files if any redistribution pass changed the totals by more than
/// config.audit_tol.
RunReport run(const SolverConfig& config, std::ostream* log = nullptr);

struct ConvergenceRow {
  double h = 0.0;
  int n = 0;
  double l1_volume = 0.0;
  double ratio_volume = 0.0;  // 0 on the first row
  double l1_boundary = 0.0;
  double ratio_boundary = 0.0;
  int steps = 0;
  bool converged = false;
};

/// Runs nx * 2^k for k < levels and writes convergence.csv.
std::vector<ConvergenceRow> converge(const SolverConfig& config, int levels,
                                     std::ostream* log = nullptr, bool write = true);

struct MeshSummary {
  int flow_cells = 0;
  int cut_cells = 0;
  int degenerate_cuts = 0;
  double min_fraction = 0.0;
  double median_cut_fraction = 0.0;
  std::map<std::string, int> hood_kinds;
  int max_overlap = 0;
  double telescoping_defect = 0.0;  // |sum V^ - sum V| / sum V
};

MeshSummary summarize_mesh(const CutCellMesh& mesh, const SrdPlan& plan);

/// Writes cells.csv, cells_geo.csv, hoods.csv and mesh_summary.txt.
MeshSummary mesh_report(const SolverConfig& config);

void write_summary(std::ostream& out, const MeshSummary& s);
void write_summary(std::ostream& out, const RunReport& r);

}  // namespace cutsrd
