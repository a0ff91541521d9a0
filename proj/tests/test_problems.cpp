#include <cmath>

#include "doctest.h"
#include "cutsrd/errors.hpp"
#include "cutsrd/problems.hpp"
#include "support.hpp"

using namespace cutsrd;
using testing::uniform;

TEST_CASE("vortex exact solution") {
  const SupersonicVortex v;
  const Primitive inner = vortex_exact(1.0, 0.0, v);
  CHECK(inner.rho == doctest::Approx(1.0));
  CHECK(inner.p == doctest::Approx(1.0 / 1.4));
  CHECK(inner.u == doctest::Approx(0.0).scale(1.0));
  CHECK(inner.v == doctest::Approx(-2.25));

  const double r = 1.384;
  const double want = std::pow(1.0 + 0.2 * 2.25 * 2.25 * (1.0 - 1.0 / (r * r)), 2.5);
  CHECK(vortex_exact(r, 0.0, v).rho == doctest::Approx(want).epsilon(1e-14));
  CHECK(vortex_exact(r, 0.0, v).rho == doctest::Approx(2.6823).epsilon(1e-4));
  CHECK_THROWS_AS(vortex_exact(0.0, 0.0, v), OriginSingular);

  for (int k = 0; k < 1000; ++k) {
    const double rr = uniform(1.0, 1.384), th = uniform(0.0, 1.5707963267948966);
    const double x = rr * std::cos(th), y = rr * std::sin(th);
    const Primitive w = vortex_exact(x, y, v);
    CHECK(std::abs(w.p - std::pow(w.rho, 1.4) / 1.4) <= 1e-14 * w.p);
    CHECK(std::abs(w.u * x + w.v * y) / rr <= 1e-13);
    CHECK(std::hypot(w.u, w.v) == doctest::Approx(2.25 / rr).epsilon(1e-14));
  }
}

TEST_CASE("shock jump") {
  const Primitive pre{1.4, 0.0, 0.0, 1.0};
  const ShockJump s = shock_jump(2.0, pre, 1.4);
  CHECK(s.post.rho == doctest::Approx(3.7333333333333).epsilon(1e-12));
  CHECK(s.post.u == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(s.post.p == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(s.speed == doctest::Approx(2.0).epsilon(1e-12));

  const ShockJump weak = shock_jump(1.0 + 1e-9, pre, 1.4);
  CHECK(weak.post.rho == doctest::Approx(pre.rho).epsilon(1e-8));
  CHECK(weak.post.p == doctest::Approx(pre.p).epsilon(1e-8));
  CHECK(weak.post.u == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));

  for (int k = 0; k < 1000; ++k) {
    const double g = uniform(1.1, 1.7), m = uniform(1.01, 12.0);
    const Primitive w0{uniform(0.1, 3), uniform(-1, 1), uniform(-1, 1), uniform(0.1, 3)};
    const ShockJump j = shock_jump(m, w0, g);
    const Primitive& w1 = j.post;
    const double W = j.speed;
    const double a0 = w0.u - W, a1 = w1.u - W;
    const double mass = w0.rho * a0;
    CHECK(w1.rho * a1 == doctest::Approx(mass).epsilon(1e-12));
    CHECK(w1.rho * a1 * a1 + w1.p == doctest::Approx(w0.rho * a0 * a0 + w0.p).epsilon(1e-12));
    const double h0 = g / (g - 1) * w0.p / w0.rho + 0.5 * a0 * a0;
    const double h1 = g / (g - 1) * w1.p / w1.rho + 0.5 * a1 * a1;
    CHECK(h1 == doctest::Approx(h0).epsilon(1e-12));
    CHECK(w1.v == w0.v);
  }
}

TEST_CASE("initial fields") {
  {
    const auto spec = cylinder_problem(40, 40);
    const auto mesh = testing::make_mesh(spec);
    const StateField U = init_field(mesh, spec);
    for (int id : mesh.flow_cells()) {
      const double rho = U.at(id, 0);
      if (mesh.cell(id).centroid.x < 0.2) {
        CHECK(rho == doctest::Approx(3.7333333333333));
      } else {
        CHECK(rho == doctest::Approx(1.4));
      }
    }
  }
  {
    auto spec = advection_problem(16, 16);
    std::get<Advection>(spec.variant).profile = Advection::Profile::Constant;
    const auto mesh = testing::make_mesh(spec);
    const StateField U = init_field(mesh, spec);
    for (int id : mesh.flow_cells()) CHECK(U.at(id, 0) == 1.0);
  }
  {
    const auto spec = vortex_problem(27, 27);
    const auto mesh = testing::make_mesh(spec);
    const StateField U = init_field(mesh, spec);
    const auto ex = exact_scalar(spec);
    const L1Errors e = l1_errors(mesh, U, [&](Vec2 p) { return ex(p, 0.0); });
    CHECK(e.volume == 0.0);
    CHECK(e.boundary == 0.0);
  }
}

TEST_CASE("error norms and rates") {
  const auto mesh = generate_mesh(BaseGrid::make({0, 0}, {1, 1}, 10, 10), ImplicitGeometry());
  StateField U(mesh.size(), 1, 0.25);
  const L1Errors e = l1_errors(mesh, U, [](Vec2) { return 0.0; });
  CHECK(e.volume == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(e.boundary == 0.0);

  CHECK(observed_rate(4.0, 1.0) == 4.0);
  CHECK(observed_rate(6.75e-3, 1.78e-3) == doctest::Approx(3.8).epsilon(0.01));
  CHECK(observed_rate(0.3, 0.3) == 1.0);
  CHECK_THROWS_AS(observed_rate(1.0, 0.0), DivideByZero);
}
