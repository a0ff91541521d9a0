#pragma once

// One-dimensional model problem: a periodic grid with two small cells
// separated by one full cell, first-order upwind, and first-order
// redistribution with {left, self, right} neighborhoods on the small cells.

#include <map>
#include <span>
#include <vector>

#include "cutsrd/srd.hpp"

namespace cutsrd {

struct Grid1D {
  std::vector<double> h;                     // cell sizes, storage order
  std::vector<std::vector<int>> hoods;       // neighborhood of each cell (storage indices)
  std::vector<int> counts;                   // N per cell
  double alpha = 1.0;
  double full = 1.0;                         // regular cell size
  int offset = 0;                            // storage index of logical cell 0

  int size() const { return static_cast<int>(h.size()); }
  /// Storage index of logical cell i (cell 0 sits between the small cells).
  int at(int i) const { return offset + i; }
  double length() const;
};

/// Cells -3..3 have sizes (h, h, a*h, h, a*h, h, h) with n_pad further full
/// cells on each side. The small cells -1 and 1 merge with both neighbors.
Grid1D build_fig2_grid(double alpha, int n_pad, double h = 1.0);

/// First-order redistribution: neighborhood averages weighted by h/N, then
/// each cell takes the mean of the averages of the neighborhoods covering it.
std::vector<double> srd1d(std::span<const double> u, const Grid1D& grid);

/// Neighborhood averages only (one per cell's own neighborhood).
std::vector<double> neighborhood_averages1d(std::span<const double> u, const Grid1D& grid);

/// One step of upwind (a = 1, dt = lambda*h) followed by srd1d.
std::vector<double> upwind_srd_step(std::span<const double> u, const Grid1D& grid, double lambda);

struct ComposedWeights {
  /// Weights of U^{n+1} at logical cells -1 and 1, keyed by logical index of
  /// the old value. Entries below 1e-15 in magnitude are omitted.
  std::map<int, double> minus1;
  std::map<int, double> plus1;
};

/// Extracts the composed upwind+SRD weights by probing unit vectors.
ComposedWeights composed_weights(const Grid1D& grid, double lambda);

/// Closed-form weights for the same update, derived by hand.
ComposedWeights closed_form_weights(double alpha, double lambda);

/// Runs `steps` upwind+SRD steps from a smooth periodic profile and returns
/// max|U| / max|U^0| over the whole run.
double stability_growth(double alpha, double lambda, int steps, int n_pad = 20);

/// The grid as a single-row strip of unit-height cells, for feeding the 2D
/// neighborhood builder.
CellLayout strip_layout(const Grid1D& grid);

}  // namespace cutsrd
