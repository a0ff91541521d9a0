#pragma once

// Shared helpers for the test binaries: seeded RNG, mesh shortcuts and a few
// oracles written independently of the library code.

#include <cmath>
#include <random>
#include <vector>

#include "cutsrd/geometry.hpp"
#include "cutsrd/mesh.hpp"
#include "cutsrd/problems.hpp"
#include "cutsrd/srd.hpp"

namespace testing {

using namespace cutsrd;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20241016);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double rel_err(double got, double want) {
  const double s = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / s;
}

inline CutCellMesh make_mesh(const ProblemSpec& spec) {
  return generate_mesh(BaseGrid::make(spec.lo, spec.hi, spec.nx, spec.ny), spec.geometry);
}

/// Sutherland-Hodgman clip of a convex polygon against {p : dot(p - q, n) >= 0}.
inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 q, Vec2 n) {
  std::vector<Vec2> out;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2 a = poly[k], b = poly[(k + 1) % m];
    const double da = dot(a - q, n), db = dot(b - q, n);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) out.push_back(a + (da / (da - db)) * (b - a));
  }
  return out;
}

/// Area and centroid by fan triangulation from vertex 0.
inline double fan_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    a += 0.5 * ((v[k].x - v[0].x) * (v[k + 1].y - v[0].y) - (v[k + 1].x - v[0].x) * (v[k].y - v[0].y));
  }
  return a;
}

/// Cell average of f over a convex polygon using a 7-point triangle rule
/// (exact for polynomials up to degree 5).
template <class F>
double polygon_average(const std::vector<Vec2>& v, F&& f) {
  static const double w[7] = {0.225,
                              0.132394152788506, 0.132394152788506, 0.132394152788506,
                              0.125939180544827, 0.125939180544827, 0.125939180544827};
  static const double l[7][3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                 {0.059715871789770, 0.470142064105115, 0.470142064105115},
                                 {0.470142064105115, 0.059715871789770, 0.470142064105115},
                                 {0.470142064105115, 0.470142064105115, 0.059715871789770},
                                 {0.797426985353087, 0.101286507323456, 0.101286507323456},
                                 {0.101286507323456, 0.797426985353087, 0.101286507323456},
                                 {0.101286507323456, 0.101286507323456, 0.797426985353087}};
  double integral = 0.0, area = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const Vec2 a = v[0], b = v[k], c = v[k + 1];
    const double t = 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    area += t;
    for (int q = 0; q < 7; ++q) {
      const Vec2 p = l[q][0] * a + l[q][1] * b + l[q][2] * c;
      integral += t * w[q] * f(p);
    }
  }
  return integral / area;
}

/// Vertices of a mesh cell: polygon for cut cells, rectangle otherwise.
inline std::vector<Vec2> cell_vertices(const CutCellMesh& mesh, int id) {
  if (const CellPolygon* p = mesh.polygon(id)) return p->vertices;
  const auto [i, j] = mesh.ij(id);
  const Rect r = mesh.grid().cell_rect(i, j);
  return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
}

}  // namespace testing
