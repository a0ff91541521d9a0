#pragma once

// Implicit geometry descriptions and exact clipping of Cartesian cells
// against them. The embedded boundary inside a cut cell is represented by a
// single straight chord.

#include <cmath>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace cutsrd {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

using Point = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

// ---------------------------------------------------------------------------
// Shapes. Every shape exposes a signed distance that is negative inside the
// flow region and positive in the solid.

struct Circle {
  enum class Keep { Inside, Outside };
  Vec2 center;
  double radius = 1.0;
  Keep keep = Keep::Outside;
};

/// Flow region is {p : dot(p - point, inward_normal) >= 0}.
struct HalfPlane {
  Vec2 point;
  Vec2 inward_normal{1.0, 0.0};
};

/// Flow region r_inner <= |p - center| <= r_outer.
struct QuarterAnnulus {
  Vec2 center;
  double r_inner = 1.0;
  double r_outer = 2.0;
};

struct FullDomain {};

using Shape = std::variant<Circle, HalfPlane, QuarterAnnulus, FullDomain>;

/// One shape, optionally intersected with a second one.
class ImplicitGeometry {
 public:
  ImplicitGeometry() : primary_(FullDomain{}) {}
  ImplicitGeometry(Shape shape) : primary_(shape) {}  // NOLINT(google-explicit-constructor)

  static ImplicitGeometry intersection(Shape a, Shape b) {
    ImplicitGeometry g(a);
    g.second_ = b;
    return g;
  }

  double signed_distance(Vec2 p) const;
  bool is_full_domain() const;

  const Shape& primary() const { return primary_; }
  const std::optional<Shape>& second() const { return second_; }

 private:
  Shape primary_;
  std::optional<Shape> second_;
};

double signed_distance(const ImplicitGeometry& geometry, Vec2 p);

// ---------------------------------------------------------------------------
// Polygons.

enum class FaceKind { GridFace, BoundarySegment };

struct PolygonFace {
  double length = 0.0;
  Vec2 midpoint;
  Vec2 normal;  // outward unit normal
  FaceKind kind = FaceKind::GridFace;
};

/// Counterclockwise polygon with cached measures.
struct CellPolygon {
  std::vector<Vec2> vertices;
  double volume = 0.0;
  Vec2 centroid;
  std::vector<PolygonFace> faces;

  /// The chord approximating the embedded boundary, if the cell has one.
  const PolygonFace* boundary_segment() const;
};

/// Volume-averaged second central moments about the centroid,
/// S_xx = (1/V) * integral of (x - xc)^2 and so on.
struct SecondMoments {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

double shoelace_area(std::span<const Vec2> vertices);
Vec2 polygon_centroid(std::span<const Vec2> vertices);
SecondMoments polygon_moments(std::span<const Vec2> vertices);
SecondMoments polygon_moments(const CellPolygon& poly);

/// Moments of an axis-aligned rectangle about its center.
inline SecondMoments rect_moments(double dx, double dy) {
  return {dx * dx / 12.0, 0.0, dy * dy / 12.0};
}

/// Builds the polygon data (measures and faces) from CCW vertices. Edge k runs
/// from vertex k to vertex k+1; edges listed in `boundary_edges` are tagged as
/// boundary segments.
CellPolygon make_polygon(std::vector<Vec2> vertices,
                         std::span<const int> boundary_edges = {});

// ---------------------------------------------------------------------------
// Clipping.

enum class CellClass { Solid, Full, Cut };

struct ClipResult {
  CellClass cls = CellClass::Solid;
  CellPolygon polygon;  // populated for Cut cells only
  bool degenerate = false;  // a sliver cut reclassified as Solid
};

/// Relative volume fraction below which a cut cell becomes Solid.
inline constexpr double kDegenerateFraction = 1e-14;

/// Part of the segment a->b lying in the flow region. Empty when the segment
/// is entirely solid. Throws MultipleCrossings (with i = j = -1) when the
/// boundary crosses the segment more than once.
std::optional<std::pair<Vec2, Vec2>> wetted_segment(const ImplicitGeometry& geometry,
                                                    Vec2 a, Vec2 b);

/// Intersects a rectangle with the flow region. The intersection points on
/// the rectangle edges are found by bisection to 1e-12 absolute.
ClipResult clip_cell(const ImplicitGeometry& geometry, const Rect& cell);

}  // namespace cutsrd
