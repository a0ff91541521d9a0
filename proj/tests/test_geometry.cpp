#include <cmath>
#include <numbers>

#include "doctest.h"
#include "cutsrd/errors.hpp"
#include "support.hpp"

using namespace cutsrd;
using testing::uniform;

namespace {

ClipResult clip(const Shape& s, const Rect& r) { return clip_cell(ImplicitGeometry(s), r); }

// Centered second moments of a triangle: (1/12) sum of the vertex offsets
// from the centroid (products for the cross term).
SecondMoments triangle_moments(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 g = (1.0 / 3.0) * (a + b + c);
  SecondMoments s;
  for (Vec2 v : {a - g, b - g, c - g}) {
    s.xx += v.x * v.x / 12.0;
    s.xy += v.x * v.y / 12.0;
    s.yy += v.y * v.y / 12.0;
  }
  return s;
}

Vec2 fan_centroid(const std::vector<Vec2>& v) {
  Vec2 sum;
  double area = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const double t = 0.5 * cross(v[k] - v[0], v[k + 1] - v[0]);
    sum += (t / 3.0) * (v[0] + v[k] + v[k + 1]);
    area += t;
  }
  return (1.0 / area) * sum;
}

}  // namespace

TEST_CASE("signed distance of the basic shapes") {
  const ImplicitGeometry outside(Circle{{0.0, 0.0}, 1.0, Circle::Keep::Outside});
  CHECK(outside.signed_distance({2.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(outside.signed_distance({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(outside.signed_distance({0.0, 1.0}) == doctest::Approx(0.0));

  const ImplicitGeometry half(HalfPlane{{0.5, 0.0}, {-1.0, 0.0}});
  CHECK(half.signed_distance({0.2, 7.0}) == doctest::Approx(-0.3));
  CHECK(half.signed_distance({0.9, -3.0}) == doctest::Approx(0.4));

  const ImplicitGeometry ring(QuarterAnnulus{{0.0, 0.0}, 1.0, 1.384});
  CHECK(ring.signed_distance({1.2, 0.0}) < 0.0);
  CHECK(ring.signed_distance({0.5, 0.5}) > 0.0);
  CHECK(ring.signed_distance({1.5, 0.0}) > 0.0);

  CHECK(ImplicitGeometry().signed_distance({1e9, -1e9}) < 0.0);
}

TEST_CASE("signed distances are 1-Lipschitz") {
  const std::vector<ImplicitGeometry> shapes{
      ImplicitGeometry(Circle{{0.5, 0.5}, 0.15, Circle::Keep::Outside}),
      ImplicitGeometry(Circle{{0.3, 0.7}, 0.4, Circle::Keep::Inside}),
      ImplicitGeometry(HalfPlane{{1.0 / 6.0, 0.0}, {-0.5, std::sqrt(3.0) / 2.0}}),
      ImplicitGeometry(QuarterAnnulus{{0.0, 0.0}, 1.0, 1.384}),
      ImplicitGeometry::intersection(Circle{{0.5, 0.5}, 0.2, Circle::Keep::Outside},
                                     HalfPlane{{0.0, 0.1}, {0.0, 1.0}})};
  for (const auto& g : shapes) {
    for (int k = 0; k < 2000; ++k) {
      const Vec2 p{uniform(0.0, 1.5), uniform(0.0, 1.5)};
      const Vec2 q{uniform(0.0, 1.5), uniform(0.0, 1.5)};
      REQUIRE(std::abs(g.signed_distance(p) - g.signed_distance(q)) <= norm(p - q) * (1 + 1e-12));
    }
  }
}

TEST_CASE("clip_cell on hand-checked half planes") {
  const Rect unit{0.0, 0.0, 1.0, 1.0};

  const auto half = clip(HalfPlane{{0.5, 0.0}, {-1.0, 0.0}}, unit);
  REQUIRE(half.cls == CellClass::Cut);
  CHECK(half.polygon.volume == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.polygon.centroid.x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(half.polygon.centroid.y == doctest::Approx(0.5).epsilon(1e-12));

  const double s = 1.0 / std::sqrt(2.0);
  const auto tri = clip(HalfPlane{{0.25, 0.25}, {-s, -s}}, unit);
  REQUIRE(tri.cls == CellClass::Cut);
  CHECK(tri.polygon.vertices.size() == 3);
  CHECK(tri.polygon.volume == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(tri.polygon.centroid.x == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(tri.polygon.centroid.y == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  const PolygonFace* chord = tri.polygon.boundary_segment();
  REQUIRE(chord != nullptr);
  CHECK(chord->length == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(chord->normal.x == doctest::Approx(s));
  CHECK(chord->normal.y == doctest::Approx(s));

  CHECK(clip(FullDomain{}, unit).cls == CellClass::Full);
  CHECK(clip(HalfPlane{{2.0, 0.0}, {1.0, 0.0}}, unit).cls == CellClass::Solid);
  CHECK(clip(HalfPlane{{-2.0, 0.0}, {1.0, 0.0}}, unit).cls == CellClass::Full);
}

TEST_CASE("sliver cuts are reclassified as solid") {
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  const double s = 1.0 / std::sqrt(2.0);
  const auto r = clip(HalfPlane{{1.0, 1.0 - 2e-8}, {s, s}}, unit);
  CHECK(r.cls == CellClass::Solid);
  CHECK(r.degenerate);
}

TEST_CASE("a boundary entering an edge twice is rejected") {
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  const ImplicitGeometry bump(Circle{{0.5, 0.0}, 0.2, Circle::Keep::Outside});
  CHECK_THROWS_AS(clip_cell(bump, unit), MultipleCrossings);
  CHECK_THROWS_AS(generate_mesh(BaseGrid::make({0.0, 0.0}, {3.0, 3.0}, 3, 3), bump),
                  MultipleCrossings);
}

TEST_CASE("clip_cell matches Sutherland-Hodgman on random half planes") {
  int cut = 0;
  for (int k = 0; k < 2000; ++k) {
    const double x0 = uniform(-2.0, 2.0), y0 = uniform(-2.0, 2.0);
    const Rect r{x0, y0, x0 + uniform(0.1, 2.0), y0 + uniform(0.1, 2.0)};
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    const Vec2 n{std::cos(th), std::sin(th)};
    const Vec2 q{uniform(r.x0, r.x1), uniform(r.y0, r.y1)};

    const std::vector<Vec2> box{{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    const auto ref = testing::clip_halfplane(box, q, n);
    const double ref_area = testing::fan_area(ref);
    const auto got = clip(HalfPlane{q, n}, r);
    if (got.cls != CellClass::Cut) {
      CHECK(ref_area < 1e-12 * r.area());
      continue;
    }
    ++cut;
    const CellPolygon& p = got.polygon;
    // Bisection places crossings to ~1e-13 along each edge, so the area error
    // is bounded by that times the chord extent.
    CHECK(std::abs(p.volume - ref_area) <= 1e-12 * r.area());
    const Vec2 c = fan_centroid(ref);
    CHECK(norm(p.centroid - c) <= 1e-11 * std::max(r.width(), r.height()));
    CHECK(std::abs(p.volume - shoelace_area(p.vertices)) <= 1e-13 * p.volume);

    Vec2 closure;
    double perimeter = 0.0;
    for (const auto& f : p.faces) {
      closure += f.length * f.normal;
      perimeter += f.length;
    }
    CHECK(norm(closure) <= 1e-12 * perimeter);
    CHECK(p.volume > 0.0);
    CHECK(p.volume <= r.area() * (1 + 1e-15));
    CHECK(p.centroid.x >= r.x0);
    CHECK(p.centroid.x <= r.x1);
    CHECK(p.centroid.y >= r.y0);
    CHECK(p.centroid.y <= r.y1);
  }
  CHECK(cut > 1500);
}

TEST_CASE("polygon moments") {
  const std::vector<Vec2> sq{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
  const auto m = polygon_moments(sq);
  CHECK(m.xx == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(m.xy == doctest::Approx(0.0));
  CHECK(m.yy == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

  std::vector<Vec2> big;
  for (Vec2 v : sq) big.push_back(2.0 * v + Vec2{3.0, -1.0});
  const auto mb = polygon_moments(big);
  CHECK(mb.xx == doctest::Approx(4.0 * m.xx).epsilon(1e-13));
  CHECK(mb.yy == doctest::Approx(4.0 * m.yy).epsilon(1e-13));

  const auto rm = rect_moments(0.3, 0.7);
  CHECK(rm.xx == doctest::Approx(0.09 / 12.0));
  CHECK(rm.yy == doctest::Approx(0.49 / 12.0));

  for (int k = 0; k < 1000; ++k) {
    Vec2 a{uniform(-1, 1), uniform(-1, 1)}, b{uniform(-1, 1), uniform(-1, 1)},
        c{uniform(-1, 1), uniform(-1, 1)};
    if (cross(b - a, c - a) < 0) std::swap(b, c);
    if (cross(b - a, c - a) < 1e-3) continue;
    const auto got = polygon_moments(std::vector<Vec2>{a, b, c});
    const auto want = triangle_moments(a, b, c);
    CHECK(got.xx == doctest::Approx(want.xx).epsilon(1e-10));
    CHECK(got.xy == doctest::Approx(want.xy).epsilon(1e-10).scale(want.xx + want.yy));
    CHECK(got.yy == doctest::Approx(want.yy).epsilon(1e-10));

    // First moments about the centroid vanish.
    const Vec2 g = polygon_centroid(std::vector<Vec2>{a, b, c});
    const std::vector<Vec2> tri{a, b, c};
    const double mx = testing::polygon_average(tri, [&](Vec2 p) { return p.x - g.x; });
    const double my = testing::polygon_average(tri, [&](Vec2 p) { return p.y - g.y; });
    CHECK(std::abs(mx) < 1e-13);
    CHECK(std::abs(my) < 1e-13);
  }
}

TEST_CASE("cut polygon moments agree with quadrature") {
  for (int k = 0; k < 500; ++k) {
    const Rect r{0.0, 0.0, 1.0, 1.0};
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    const auto got = clip(HalfPlane{{uniform(0.2, 0.8), uniform(0.2, 0.8)},
                                         {std::cos(th), std::sin(th)}},
                               r);
    if (got.cls != CellClass::Cut) continue;
    const auto& v = got.polygon.vertices;
    const Vec2 g = got.polygon.centroid;
    const auto m = polygon_moments(got.polygon);
    const auto avg = [&](auto f) { return testing::polygon_average(v, f); };
    CHECK(m.xx == doctest::Approx(avg([&](Vec2 p) { return (p.x - g.x) * (p.x - g.x); }))
                       .epsilon(1e-10));
    CHECK(m.yy == doctest::Approx(avg([&](Vec2 p) { return (p.y - g.y) * (p.y - g.y); }))
                       .epsilon(1e-10));
    CHECK(m.xy == doctest::Approx(avg([&](Vec2 p) { return (p.x - g.x) * (p.y - g.y); }))
                       .epsilon(1e-10)
                       .scale(m.xx + m.yy));
  }
}
