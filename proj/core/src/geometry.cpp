#include "cutsrd/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "cutsrd/errors.hpp"

namespace cutsrd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double shape_distance(const Shape& shape, Vec2 p) {
  return std::visit(
      Overloaded{
          [p](const Circle& c) {
            const double r = norm(p - c.center);
            return c.keep == Circle::Keep::Outside ? c.radius - r : r - c.radius;
          },
          [p](const HalfPlane& h) {
            const Vec2 n = (1.0 / norm(h.inward_normal)) * h.inward_normal;
            return -dot(p - h.point, n);
          },
          [p](const QuarterAnnulus& a) {
            const double r = norm(p - a.center);
            return std::max(a.r_inner - r, r - a.r_outer);
          },
          [](const FullDomain&) { return -std::numeric_limits<double>::infinity(); },
      },
      shape);
}

bool inside(double sdf) { return sdf <= 0.0; }

constexpr int kEdgeSamples = 8;
constexpr double kBisectionTol = 1e-13;

}  // namespace

double ImplicitGeometry::signed_distance(Vec2 p) const {
  double d = shape_distance(primary_, p);
  if (second_) d = std::max(d, shape_distance(*second_, p));
  return d;
}

bool ImplicitGeometry::is_full_domain() const {
  const auto full = [](const Shape& s) { return std::holds_alternative<FullDomain>(s); };
  return full(primary_) && (!second_ || full(*second_));
}

double signed_distance(const ImplicitGeometry& geometry, Vec2 p) {
  return geometry.signed_distance(p);
}

const PolygonFace* CellPolygon::boundary_segment() const {
  for (const auto& f : faces) {
    if (f.kind == FaceKind::BoundarySegment) return &f;
  }
  return nullptr;
}

double shoelace_area(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  if (n < 3) return 0.0;
  const Vec2 o = v[0];
  double twice = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) twice += cross(v[k] - o, v[k + 1] - o);
  return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  const Vec2 o = v[0];
  double twice = 0.0;
  Vec2 acc;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Vec2 a = v[k] - o;
    const Vec2 b = v[k + 1] - o;
    const double c = cross(a, b);
    twice += c;
    acc += c * (a + b);
  }
  return o + (1.0 / (3.0 * twice)) * acc;
}

SecondMoments polygon_moments(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  const double area = shoelace_area(v);
  const Vec2 c = polygon_centroid(v);
  double ixx = 0.0, ixy = 0.0, iyy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = v[k] - c;
    const Vec2 b = v[(k + 1) % n] - c;
    const double w = cross(a, b);
    ixx += w * (a.x * a.x + a.x * b.x + b.x * b.x);
    iyy += w * (a.y * a.y + a.y * b.y + b.y * b.y);
    ixy += w * (a.x * b.y + 2.0 * a.x * a.y + 2.0 * b.x * b.y + b.x * a.y);
  }
  return {ixx / (12.0 * area), ixy / (24.0 * area), iyy / (12.0 * area)};
}

SecondMoments polygon_moments(const CellPolygon& poly) { return polygon_moments(poly.vertices); }

CellPolygon make_polygon(std::vector<Vec2> vertices, std::span<const int> boundary_edges) {
  CellPolygon poly;
  poly.vertices = std::move(vertices);
  const auto& v = poly.vertices;
  poly.volume = shoelace_area(v);
  poly.centroid = polygon_centroid(v);
  const std::size_t n = v.size();
  poly.faces.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = v[k];
    const Vec2 b = v[(k + 1) % n];
    const Vec2 d = b - a;
    const double len = norm(d);
    PolygonFace f;
    f.length = len;
    f.midpoint = 0.5 * (a + b);
    f.normal = len > 0.0 ? Vec2{d.y / len, -d.x / len} : Vec2{};
    f.kind = std::find(boundary_edges.begin(), boundary_edges.end(), static_cast<int>(k)) !=
                     boundary_edges.end()
                 ? FaceKind::BoundarySegment
                 : FaceKind::GridFace;
    poly.faces.push_back(f);
  }
  return poly;
}

std::optional<std::pair<Vec2, Vec2>> wetted_segment(const ImplicitGeometry& geometry, Vec2 a,
                                                    Vec2 b) {
  const Vec2 d = b - a;
  std::array<bool, kEdgeSamples + 1> in{};
  for (int k = 0; k <= kEdgeSamples; ++k) {
    const double t = static_cast<double>(k) / kEdgeSamples;
    const Vec2 p = k == kEdgeSamples ? b : a + t * d;
    in[k] = inside(geometry.signed_distance(p));
  }
  int changes = 0;
  int bracket = -1;
  for (int k = 0; k < kEdgeSamples; ++k) {
    if (in[k] != in[k + 1]) {
      ++changes;
      bracket = k;
    }
  }
  if (changes > 1) {
    throw MultipleCrossings(-1, -1, "boundary crosses a cell edge more than once");
  }
  if (changes == 0) {
    if (in[0]) return std::make_pair(a, b);
    return std::nullopt;
  }

  double lo = static_cast<double>(bracket) / kEdgeSamples;
  double hi = static_cast<double>(bracket + 1) / kEdgeSamples;
  const bool lo_in = in[bracket];
  const double len = norm(d);
  for (int it = 0; it < 200 && (hi - lo) * len > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(geometry.signed_distance(a + mid * d)) == lo_in) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Vec2 x = a + (0.5 * (lo + hi)) * d;
  if (in[0]) return std::make_pair(a, x);
  return std::make_pair(x, b);
}

ClipResult clip_cell(const ImplicitGeometry& geometry, const Rect& cell) {
  ClipResult result;
  if (geometry.is_full_domain()) {
    result.cls = CellClass::Full;
    return result;
  }

  const Vec2 c0{cell.x0, cell.y0}, c1{cell.x1, cell.y0}, c2{cell.x1, cell.y1}, c3{cell.x0, cell.y1};

  // Canonical edge directions (left-to-right, bottom-to-top) so that a shared
  // edge yields bitwise identical crossings from both adjacent cells.
  std::array<std::optional<std::pair<Vec2, Vec2>>, 4> seg;
  seg[0] = wetted_segment(geometry, c0, c1);
  seg[1] = wetted_segment(geometry, c1, c2);
  seg[2] = wetted_segment(geometry, c3, c2);
  seg[3] = wetted_segment(geometry, c0, c3);
  for (int k : {2, 3}) {
    if (seg[k]) std::swap(seg[k]->first, seg[k]->second);
  }

  const double tol = 1e-15 * std::max(cell.width(), cell.height());
  const auto close = [tol](Vec2 p, Vec2 q) { return norm(p - q) <= tol; };

  std::vector<Vec2> verts;
  std::vector<int> boundary_edges;
  int gaps = 0;
  const auto push = [&](Vec2 p) {
    if (verts.empty() || !close(verts.back(), p)) verts.push_back(p);
  };
  for (const auto& s : seg) {
    if (!s) continue;
    if (!verts.empty() && !close(verts.back(), s->first)) {
      boundary_edges.push_back(static_cast<int>(verts.size()) - 1);
      ++gaps;
    }
    push(s->first);
    push(s->second);
  }
  if (verts.size() > 1) {
    if (close(verts.back(), verts.front())) {
      verts.pop_back();
    } else {
      boundary_edges.push_back(static_cast<int>(verts.size()) - 1);
      ++gaps;
    }
  }

  if (gaps > 1) {
    throw MultipleCrossings(-1, -1, "boundary enters the cell more than once");
  }
  if (verts.size() < 3) {
    result.cls = CellClass::Solid;
    return result;
  }
  if (gaps == 0) {
    result.cls = CellClass::Full;
    return result;
  }

  result.polygon = make_polygon(std::move(verts), boundary_edges);
  if (result.polygon.volume < kDegenerateFraction * cell.area()) {
    result.cls = CellClass::Solid;
    result.degenerate = true;
    result.polygon = {};
    return result;
  }
  result.cls = CellClass::Cut;
  return result;
}

}  // namespace cutsrd
