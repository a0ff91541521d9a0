#include "cutsrd/model1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cutsrd/scheme.hpp"

namespace cutsrd {

double Grid1D::length() const {
  double s = 0.0;
  for (double v : h) s += v;
  return s;
}

Grid1D build_fig2_grid(double alpha, int n_pad, double h) {
  Grid1D g;
  g.alpha = alpha;
  g.full = h;
  const int n = 7 + 2 * n_pad;
  g.offset = n_pad + 3;
  g.h.assign(n, h);
  g.h[g.at(-1)] = alpha * h;
  g.h[g.at(1)] = alpha * h;
  g.hoods.resize(n);
  for (int c = 0; c < n; ++c) g.hoods[c] = {c};
  g.hoods[g.at(-1)] = {g.at(-2), g.at(-1), g.at(0)};
  g.hoods[g.at(1)] = {g.at(0), g.at(1), g.at(2)};
  g.counts.assign(n, 0);
  for (const auto& m : g.hoods) {
    for (int c : m) ++g.counts[c];
  }
  return g;
}

std::vector<double> neighborhood_averages1d(std::span<const double> u, const Grid1D& grid) {
  std::vector<double> q(grid.size());
  for (int c = 0; c < grid.size(); ++c) {
    const auto& m = grid.hoods[c];
    if (m.size() == 1) {
      q[c] = u[c];
      continue;
    }
    double vol = 0.0, s = 0.0;
    for (int r : m) {
      const double w = grid.h[r] / grid.counts[r];
      vol += w;
      s += w * u[r];
    }
    q[c] = s / vol;
  }
  return q;
}

std::vector<double> srd1d(std::span<const double> u, const Grid1D& grid) {
  const auto q = neighborhood_averages1d(u, grid);
  std::vector<double> out(grid.size(), 0.0);
  for (int c = 0; c < grid.size(); ++c) {
    for (int r : grid.hoods[c]) out[r] += q[c] / grid.counts[r];
  }
  return out;
}

std::vector<double> upwind_srd_step(std::span<const double> u, const Grid1D& grid, double lambda) {
  const auto provisional = upwind_step_1d(grid.h, u, 1.0, lambda * grid.full);
  return srd1d(provisional, grid);
}

ComposedWeights composed_weights(const Grid1D& grid, double lambda) {
  ComposedWeights w;
  std::vector<double> e(grid.size(), 0.0);
  for (int k = 0; k < grid.size(); ++k) {
    e.assign(grid.size(), 0.0);
    e[k] = 1.0;
    const auto out = upwind_srd_step(e, grid, lambda);
    const int logical = k - grid.offset;
    if (std::abs(out[grid.at(-1)]) > 1e-15) w.minus1[logical] = out[grid.at(-1)];
    if (std::abs(out[grid.at(1)]) > 1e-15) w.plus1[logical] = out[grid.at(1)];
  }
  return w;
}

ComposedWeights closed_form_weights(double alpha, double lambda) {
  const double d = 5.0 + 6.0 * alpha;
  ComposedWeights w;
  w.minus1 = {{0, (2.0 - 2.0 * lambda) / d},
              {-1, (6.0 * alpha - 4.0 * lambda) / d},
              {-2, (3.0 + 3.0 * lambda) / d},
              {-3, 3.0 * lambda / d}};
  w.plus1 = {{0, (2.0 + 4.0 * lambda) / d},
             {1, (6.0 * alpha - 3.0 * lambda) / d},
             {2, (3.0 - 3.0 * lambda) / d},
             {-1, 2.0 * lambda / d}};
  return w;
}

double stability_growth(double alpha, double lambda, int steps, int n_pad) {
  const Grid1D grid = build_fig2_grid(alpha, n_pad);
  const double length = grid.length();
  std::vector<double> u(grid.size());
  double x = 0.0;
  for (int c = 0; c < grid.size(); ++c) {
    const double mid = x + 0.5 * grid.h[c];
    u[c] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * mid / length);
    x += grid.h[c];
  }
  double max0 = 0.0;
  for (double v : u) max0 = std::max(max0, std::abs(v));
  double peak = max0;
  for (int s = 0; s < steps; ++s) {
    u = upwind_srd_step(u, grid, lambda);
    for (double v : u) peak = std::max(peak, std::abs(v));
  }
  return peak / max0;
}

CellLayout strip_layout(const Grid1D& grid) {
  CellLayout L;
  L.nx = grid.size();
  L.ny = 1;
  L.ghost = 0;
  L.dx = grid.full;
  L.dy = 1.0;
  L.cells.resize(grid.size());
  double x = 0.0;
  for (int c = 0; c < grid.size(); ++c) {
    L.cells[c].flow = true;
    L.cells[c].volume = grid.h[c];
    L.cells[c].centroid = {x + 0.5 * grid.h[c], 0.5};
    L.cells[c].moments = rect_moments(grid.h[c], 1.0);
    x += grid.h[c];
  }
  return L;
}

}  // namespace cutsrd
