#pragma once

// Cartesian base grid plus per-cell cut-cell geometry. All per-cell arrays are
// stored on the padded grid, i.e. the interior nx x ny cells surrounded by
// kGhost layers of ghost cells on every side. Cell ids are row-major over the
// padded grid.

#include <span>
#include <utility>
#include <vector>

#include "cutsrd/geometry.hpp"

namespace cutsrd {

struct BaseGrid {
  Vec2 lo;
  Vec2 hi;
  int nx = 0;
  int ny = 0;

  /// Validates nx, ny >= 3 and hi > lo.
  static BaseGrid make(Vec2 lo, Vec2 hi, int nx, int ny);

  double dx() const { return (hi.x - lo.x) / nx; }
  double dy() const { return (hi.y - lo.y) / ny; }
  double node_x(int i) const { return lo.x + i * dx(); }
  double node_y(int j) const { return lo.y + j * dy(); }
  /// Rectangle of cell (i, j); indices outside [0,n) address ghost cells.
  Rect cell_rect(int i, int j) const {
    return {node_x(i), node_y(j), node_x(i + 1), node_y(j + 1)};
  }
};

struct CellGeom {
  CellClass cls = CellClass::Solid;
  double volume = 0.0;
  Vec2 centroid;
  SecondMoments moments;
  // Boundary chord, cut cells only. The normal points out of the fluid.
  double boundary_length = 0.0;
  Vec2 boundary_normal;
  Vec2 boundary_midpoint;

  bool is_flow() const { return cls != CellClass::Solid; }
};

/// Face between two flow cells; `normal` points from `lo` to `hi`.
struct GridFace {
  int lo = -1;
  int hi = -1;
  Vec2 normal;
  double length = 0.0;
  Vec2 midpoint;
};

/// Face between a flow cell and solid material: either the cut-cell chord or
/// the wetted part of an edge shared with a sliver cell that was reclassified
/// Solid. `normal` points out of the fluid.
struct WallFace {
  int cell = -1;
  Vec2 normal;
  double length = 0.0;
  Vec2 midpoint;
  bool chord = true;
};

class CutCellMesh {
 public:
  static constexpr int kGhost = 2;

  CutCellMesh() = default;

  const BaseGrid& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }
  /// Padded extents.
  int nxp() const { return grid_.nx + 2 * kGhost; }
  int nyp() const { return grid_.ny + 2 * kGhost; }
  int size() const { return nxp() * nyp(); }

  /// Id of cell (i, j) with -kGhost <= i < nx + kGhost.
  int id(int i, int j) const { return (j + kGhost) * nxp() + (i + kGhost); }
  std::pair<int, int> ij(int id) const { return {id % nxp() - kGhost, id / nxp() - kGhost}; }
  bool in_padded(int i, int j) const {
    return i >= -kGhost && i < nx() + kGhost && j >= -kGhost && j < ny() + kGhost;
  }
  bool is_interior(int i, int j) const { return i >= 0 && i < nx() && j >= 0 && j < ny(); }
  bool is_interior(int id) const {
    const auto [i, j] = ij(id);
    return is_interior(i, j);
  }

  const CellGeom& cell(int id) const { return cells_[id]; }
  const CellGeom& cell(int i, int j) const { return cells_[id(i, j)]; }
  std::span<const CellGeom> cells() const { return cells_; }

  /// Polygon of a cut cell, or nullptr for Full and Solid cells.
  const CellPolygon* polygon(int id) const {
    return polygon_index_[id] < 0 ? nullptr : &polygons_[polygon_index_[id]];
  }

  std::span<const GridFace> faces() const { return faces_; }
  std::span<const WallFace> walls() const { return walls_; }

  /// Interior flow cells and interior cut cells, in id order.
  std::span<const int> flow_cells() const { return flow_cells_; }
  std::span<const int> cut_cells() const { return cut_cells_; }

  double full_volume() const { return grid_.dx() * grid_.dy(); }
  double volume_fraction(int id) const { return cells_[id].volume / full_volume(); }
  double min_volume_fraction() const;
  /// Sum of interior flow-cell volumes.
  double flow_volume() const;
  /// Number of sliver cuts reclassified Solid during generation.
  int degenerate_cuts() const { return degenerate_cuts_; }

 private:
  friend CutCellMesh generate_mesh(const BaseGrid&, const ImplicitGeometry&);

  BaseGrid grid_;
  std::vector<CellGeom> cells_;
  std::vector<int> polygon_index_;
  std::vector<CellPolygon> polygons_;
  std::vector<GridFace> faces_;
  std::vector<WallFace> walls_;
  std::vector<int> flow_cells_;
  std::vector<int> cut_cells_;
  int degenerate_cuts_ = 0;
};

/// Classifies every padded cell against the geometry. Throws MultipleCrossings
/// carrying the offending cell index.
CutCellMesh generate_mesh(const BaseGrid& grid, const ImplicitGeometry& geometry);

/// Interior flow cells in the (2*half_width+1)^2 tile centered on (i, j),
/// including (i, j) itself, clipped at the domain edges.
std::vector<int> flow_neighbors(const CutCellMesh& mesh, int i, int j, int half_width);

}  // namespace cutsrd
