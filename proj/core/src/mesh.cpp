#include "cutsrd/mesh.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cutsrd/errors.hpp"

namespace cutsrd {

BaseGrid BaseGrid::make(Vec2 lo, Vec2 hi, int nx, int ny) {
  if (nx < 3 || ny < 3) throw Error("base grid needs at least 3 cells per direction");
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) throw Error("base grid has non-positive extent");
  return BaseGrid{lo, hi, nx, ny};
}

double CutCellMesh::min_volume_fraction() const {
  double m = std::numeric_limits<double>::infinity();
  for (int id : flow_cells_) m = std::min(m, volume_fraction(id));
  return m;
}

double CutCellMesh::flow_volume() const {
  double v = 0.0;
  for (int id : flow_cells_) v += cells_[id].volume;
  return v;
}

namespace {

void add_edge(CutCellMesh& mesh, std::vector<GridFace>& faces, std::vector<WallFace>& walls,
              const ImplicitGeometry& geometry, int lo, int hi, Vec2 a, Vec2 b, Vec2 normal) {
  const CellGeom& cl = mesh.cell(lo);
  const CellGeom& ch = mesh.cell(hi);
  if (!cl.is_flow() && !ch.is_flow()) return;
  const bool li = mesh.is_interior(lo);
  const bool hi_in = mesh.is_interior(hi);
  if (!li && !hi_in) return;

  std::pair<Vec2, Vec2> seg{a, b};
  if (cl.cls != CellClass::Full || ch.cls != CellClass::Full) {
    auto w = wetted_segment(geometry, a, b);
    if (!w) return;
    seg = *w;
  }
  const double length = norm(seg.second - seg.first);
  if (!(length > 0.0)) return;
  const Vec2 mid = 0.5 * (seg.first + seg.second);

  if (cl.is_flow() && ch.is_flow()) {
    faces.push_back({lo, hi, normal, length, mid});
  } else if (cl.is_flow() && li) {
    walls.push_back({lo, normal, length, mid, false});
  } else if (ch.is_flow() && hi_in) {
    walls.push_back({hi, -normal, length, mid, false});
  }
}

}  // namespace

CutCellMesh generate_mesh(const BaseGrid& grid, const ImplicitGeometry& geometry) {
  CutCellMesh mesh;
  mesh.grid_ = grid;
  const int g = CutCellMesh::kGhost;
  const int n = mesh.size();
  mesh.cells_.assign(n, CellGeom{});
  mesh.polygon_index_.assign(n, -1);
  const double dx = grid.dx();
  const double dy = grid.dy();

  for (int j = -g; j < grid.ny + g; ++j) {
    for (int i = -g; i < grid.nx + g; ++i) {
      const int id = mesh.id(i, j);
      const Rect rect = grid.cell_rect(i, j);
      ClipResult clip;
      try {
        clip = clip_cell(geometry, rect);
      } catch (const MultipleCrossings& e) {
        throw MultipleCrossings(i, j,
                                std::string(e.what()) + " at cell (" + std::to_string(i) + ", " +
                                    std::to_string(j) + "); refine the mesh");
      }
      CellGeom& c = mesh.cells_[id];
      c.cls = clip.cls;
      if (clip.degenerate && mesh.is_interior(i, j)) ++mesh.degenerate_cuts_;
      if (clip.cls == CellClass::Full) {
        c.volume = dx * dy;
        c.centroid = rect.center();
        c.moments = rect_moments(dx, dy);
      } else if (clip.cls == CellClass::Cut) {
        c.volume = clip.polygon.volume;
        c.centroid = clip.polygon.centroid;
        c.moments = polygon_moments(clip.polygon);
        if (const PolygonFace* b = clip.polygon.boundary_segment()) {
          c.boundary_length = b->length;
          c.boundary_normal = b->normal;
          c.boundary_midpoint = b->midpoint;
        }
        mesh.polygon_index_[id] = static_cast<int>(mesh.polygons_.size());
        mesh.polygons_.push_back(std::move(clip.polygon));
      }
      if (mesh.is_interior(i, j) && c.is_flow()) {
        mesh.flow_cells_.push_back(id);
        if (c.cls == CellClass::Cut) mesh.cut_cells_.push_back(id);
      }
    }
  }

  // Vertical edges: node column i separates cells (i-1, j) and (i, j).
  for (int j = -g; j < grid.ny + g; ++j) {
    for (int i = -g + 1; i < grid.nx + g; ++i) {
      const Vec2 a{grid.node_x(i), grid.node_y(j)};
      const Vec2 b{grid.node_x(i), grid.node_y(j + 1)};
      try {
        add_edge(mesh, mesh.faces_, mesh.walls_, geometry, mesh.id(i - 1, j), mesh.id(i, j), a, b,
                 {1.0, 0.0});
      } catch (const MultipleCrossings& e) {
        throw MultipleCrossings(i, j, e.what());
      }
    }
  }
  // Horizontal edges: node row j separates cells (i, j-1) and (i, j).
  for (int j = -g + 1; j < grid.ny + g; ++j) {
    for (int i = -g; i < grid.nx + g; ++i) {
      const Vec2 a{grid.node_x(i), grid.node_y(j)};
      const Vec2 b{grid.node_x(i + 1), grid.node_y(j)};
      try {
        add_edge(mesh, mesh.faces_, mesh.walls_, geometry, mesh.id(i, j - 1), mesh.id(i, j), a, b,
                 {0.0, 1.0});
      } catch (const MultipleCrossings& e) {
        throw MultipleCrossings(i, j, e.what());
      }
    }
  }
  // Chords of interior cut cells.
  for (int id : mesh.cut_cells_) {
    const CellGeom& c = mesh.cells_[id];
    if (c.boundary_length > 0.0) {
      mesh.walls_.push_back({id, c.boundary_normal, c.boundary_length, c.boundary_midpoint, true});
    }
  }
  return mesh;
}

std::vector<int> flow_neighbors(const CutCellMesh& mesh, int i, int j, int half_width) {
  std::vector<int> out;
  for (int s = j - half_width; s <= j + half_width; ++s) {
    for (int r = i - half_width; r <= i + half_width; ++r) {
      if (!mesh.is_interior(r, s)) continue;
      const int id = mesh.id(r, s);
      if (mesh.cell(id).is_flow()) out.push_back(id);
    }
  }
  return out;
}

}  // namespace cutsrd
