// cutsrd: batch driver for the cut-cell solver.
//
//   cutsrd run <config>
//   cutsrd converge <config> --levels k
//   cutsrd mesh-report <config>
//   cutsrd oned-demo [--alpha a] [--lambda l]
//
// Exit codes: 0 ok, 2 configuration error, 3 solver error, 4 audit failure.

#include <cstdio>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "cutsrd/config.hpp"
#include "cutsrd/driver.hpp"
#include "cutsrd/errors.hpp"
#include "cutsrd/model1d.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitAudit = 4;

void oned_demo(double alpha, double lambda) {
  using namespace cutsrd;
  std::cout << std::setprecision(12);
  const Grid1D grid = build_fig2_grid(alpha, 4);
  const ComposedWeights got = composed_weights(grid, lambda);
  const ComposedWeights ref = closed_form_weights(alpha, lambda);

  std::cout << "# composed weights, alpha=" << alpha << " lambda=" << lambda << "\n";
  std::cout << "target,source,extracted,closed_form\n";
  const auto table = [](const char* name, const std::map<int, double>& a,
                        const std::map<int, double>& b) {
    std::map<int, std::pair<double, double>> rows;
    for (auto [k, v] : a) rows[k].first = v;
    for (auto [k, v] : b) rows[k].second = v;
    for (auto [k, v] : rows) {
      std::cout << name << ',' << k << ',' << v.first << ',' << v.second << '\n';
    }
  };
  table("-1", got.minus1, ref.minus1);
  table("1", got.plus1, ref.plus1);

  std::vector<double> u(grid.size());
  for (int c = 0; c < grid.size(); ++c) u[c] = 1.0 + 0.25 * ((c * 7919) % 13) / 13.0;
  double before = 0.0, after = 0.0;
  for (int c = 0; c < grid.size(); ++c) before += grid.h[c] * u[c];
  const auto v = srd1d(u, grid);
  for (int c = 0; c < grid.size(); ++c) after += grid.h[c] * v[c];
  std::cout << "\n# conservation\nbefore,after,relative_change\n"
            << before << ',' << after << ',' << std::abs(after - before) / before << '\n';

  std::cout << "\n# stability sweep (5000 steps)\nalpha,lambda,max_growth\n";
  for (double a : {0.5, 0.1, 1e-2, 1e-3, 1e-6}) {
    for (double l : {0.5, 0.9, 1.0}) {
      std::cout << a << ',' << l << ',' << stability_growth(a, l, 5000) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-cell finite volume solver with state redistribution"};
  app.require_subcommand(1);

  std::string config_path;
  int levels = 3;
  double alpha = 0.25, lambda = 0.5;

  auto* run = app.add_subcommand("run", "run a configuration");
  run->add_option("config", config_path, "configuration file")->required();
  auto* conv = app.add_subcommand("converge", "grid convergence study");
  conv->add_option("config", config_path, "configuration file")->required();
  conv->add_option("--levels", levels, "number of grids (nx * 2^k)")->check(CLI::Range(1, 8));
  auto* mesh = app.add_subcommand("mesh-report", "write mesh and neighborhood tables");
  mesh->add_option("config", config_path, "configuration file")->required();
  auto* oned = app.add_subcommand("oned-demo", "one-dimensional model problem tables");
  oned->add_option("--alpha", alpha, "small cell fraction")->check(CLI::Range(1e-12, 1.0));
  oned->add_option("--lambda", lambda, "a dt / h")->check(CLI::Range(1e-12, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*oned) {
      oned_demo(alpha, lambda);
      return 0;
    }
    const cutsrd::SolverConfig cfg = cutsrd::load_config(config_path);
    if (*run) {
      const auto report = cutsrd::run(cfg, &std::cerr);
      cutsrd::write_summary(std::cout, report);
      if (report.steady && !report.converged) {
        std::cerr << "warning: steady tolerance not reached within the step limit\n";
      }
    } else if (*conv) {
      const auto rows = cutsrd::converge(cfg, levels, &std::cerr);
      std::cout << "h,N,L1_volume,ratio_volume,L1_boundary,ratio_boundary\n"
                << std::setprecision(6);
      for (const auto& r : rows) {
        std::cout << r.h << ',' << r.n << ',' << r.l1_volume << ',' << r.ratio_volume << ','
                  << r.l1_boundary << ',' << r.ratio_boundary << '\n';
      }
    } else if (*mesh) {
      cutsrd::write_summary(std::cout, cutsrd::mesh_report(cfg));
    }
  } catch (const cutsrd::ParseError& e) {
    std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
    return kExitConfig;
  } catch (const cutsrd::ValidationError& e) {
    std::cerr << "config error (" << e.key << "): " << e.what() << "\n";
    return kExitConfig;
  } catch (const cutsrd::AuditFailure& e) {
    std::cerr << "audit failure: " << e.what() << "\n";
    return kExitAudit;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
