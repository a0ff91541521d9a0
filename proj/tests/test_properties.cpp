// Randomized invariants: at least 1000 cases per group.

#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "cutsrd/errors.hpp"
#include "cutsrd/recon.hpp"
#include "cutsrd/scheme.hpp"
#include "cutsrd/srd.hpp"
#include "support.hpp"

using namespace cutsrd;
using testing::uniform;

namespace {

constexpr int kCases = 1000;
constexpr GradientMode kModes[] = {GradientMode::FirstOrderLSQ, GradientMode::PointwiseQuadratic,
                                   GradientMode::SecondOrderQuadratic};

ImplicitGeometry random_geometry() {
  const int kind = static_cast<int>(uniform(0, 3));
  if (kind == 0) {
    return ImplicitGeometry(Circle{{uniform(0.4, 0.6), uniform(0.4, 0.6)}, uniform(0.12, 0.3),
                                   Circle::Keep::Outside});
  }
  if (kind == 1) {
    return ImplicitGeometry(Circle{{uniform(0.45, 0.55), uniform(0.45, 0.55)}, uniform(0.3, 0.42),
                                   Circle::Keep::Inside});
  }
  const double th = uniform(0, 2 * std::numbers::pi);
  return ImplicitGeometry(
      HalfPlane{{uniform(0.4, 0.6), uniform(0.4, 0.6)}, {std::cos(th), std::sin(th)}});
}

std::array<double, 4> random_state() {
  return prim_to_cons({uniform(0.1, 5), uniform(-3, 3), uniform(-3, 3), uniform(0.1, 5)}, 1.4);
}

Vec2 random_normal() {
  const double th = uniform(0, 2 * std::numbers::pi);
  return {std::cos(th), std::sin(th)};
}

}  // namespace

// ---------------------------------------------------------------------------
// recon

TEST_CASE("mc slopes are bounded, odd and exact on lines") {
  for (int k = 0; k < kCases; ++k) {
    const double l = uniform(-1, 1), c = uniform(-1, 1), r = uniform(-1, 1), h = uniform(0.01, 1);
    const double s = mc_slope(l, c, r, h);
    const double dm = (c - l) / h, dp = (r - c) / h;
    CHECK(std::abs(s) <= 2.0 * std::min(std::abs(dm), std::abs(dp)) + 1e-15);
    if (dm * dp <= 0.0) CHECK(s == 0.0);
    else CHECK(s * dp > 0.0);
    CHECK(mc_slope(r, c, l, h) == -s);
    // Face values stay inside the neighbor range.
    CHECK(c + 0.5 * h * s <= std::max(c, r) + 1e-14);
    CHECK(c + 0.5 * h * s >= std::min(c, r) - 1e-14);
    const double a = uniform(-5, 5), b = uniform(-5, 5);
    CHECK(mc_slope(b - a * h, b, b + a * h, h) == doctest::Approx(a).epsilon(1e-12).scale(5));
  }
}

TEST_CASE("bj keeps stencil reconstructions in range and is affine invariant") {
  for (int k = 0; k < kCases; ++k) {
    const int n = 3 + static_cast<int>(uniform(0, 20));
    std::vector<Vec2> pts(n);
    std::vector<double> vals(n);
    const Vec2 c{uniform(-1, 1), uniform(-1, 1)};
    for (int m = 0; m < n; ++m) {
      pts[m] = c + Vec2{uniform(-0.1, 0.1), uniform(-0.1, 0.1)};
      vals[m] = uniform(-1, 1);
    }
    const double uc = uniform(-1, 1);
    const Vec2 g{uniform(-20, 20), uniform(-20, 20)};
    const double alpha = bj_alpha(g, uc, c, vals, pts);
    CHECK(alpha >= 0.0);
    CHECK(alpha <= 1.0);
    double lo = uc, hi = uc;
    for (double v : vals) lo = std::min(lo, v), hi = std::max(hi, v);
    const Vec2 lim = bj_limit(g, uc, c, vals, pts);
    for (const Vec2& p : pts) {
      const double q = uc + dot(lim, p - c);
      CHECK(q >= lo - 1e-13);
      CHECK(q <= hi + 1e-13);
    }

    const double shift = uniform(-10, 10), scale = uniform(0.1, 10);
    std::vector<double> shifted(n), scaled(n);
    for (int m = 0; m < n; ++m) {
      shifted[m] = vals[m] + shift;
      scaled[m] = vals[m] * scale;
    }
    CHECK(bj_alpha(g, uc + shift, c, shifted, pts) == doctest::Approx(alpha).epsilon(1e-9));
    CHECK(bj_alpha(scale * g, uc * scale, c, scaled, pts) == doctest::Approx(alpha).epsilon(1e-9));
  }
}

TEST_CASE("least squares is linear exact and translation invariant") {
  for (int k = 0; k < kCases; ++k) {
    const double a = uniform(-5, 5), b = uniform(-5, 5), e = uniform(-5, 5);
    const double h = uniform(0.01, 1.0);
    const Vec2 c{uniform(-3, 3), uniform(-3, 3)};
    const int n = 6 + static_cast<int>(uniform(0, 18));
    std::vector<Vec2> pts(n);
    std::vector<double> vals(n);
    std::vector<SecondMoments> mom(n);
    for (int m = 0; m < n; ++m) {
      pts[m] = c + h * Vec2{uniform(-2.5, 2.5), uniform(-2.5, 2.5)};
      vals[m] = a * pts[m].x + b * pts[m].y + e;
      mom[m] = {h * h * uniform(0, 0.1), h * h * uniform(-0.01, 0.01), h * h * uniform(0, 0.1)};
    }
    const LsqMoments lm{{h * h / 12, 0.0, h * h / 12}, mom};
    const GradientMode mode = kModes[k % 3];
    Vec2 g;
    try {
      g = lsq_gradient(vals, pts, a * c.x + b * c.y + e, c, mode, &lm, {h, h});
    } catch (const IllConditioned&) {
      continue;
    }
    CHECK(g.x == doctest::Approx(a).epsilon(1e-9).scale(5));
    CHECK(g.y == doctest::Approx(b).epsilon(1e-9).scale(5));

    // Translating every point leaves the weights unchanged.
    std::vector<Vec2> offs(n), moved(n);
    const Vec2 t{uniform(-10, 10), uniform(-10, 10)};
    for (int m = 0; m < n; ++m) offs[m] = pts[m] - c;
    const auto w1 = lsq_weights(offs, mode, &lm, {h, h});
    for (int m = 0; m < n; ++m) moved[m] = (pts[m] + t) - (c + t);
    const auto w2 = lsq_weights(moved, mode, &lm, {h, h});
    for (int m = 0; m < n; ++m) {
      CHECK(norm(w1[m] - w2[m]) <= 1e-6 * (norm(w1[m]) + 1.0 / h));
    }
  }
}

// ---------------------------------------------------------------------------
// srd

TEST_CASE("redistribution conserves, is convex at first order and fixes isolated cells") {
  int cases = 0;
  while (cases < kCases) {
    const int n = 12 + static_cast<int>(uniform(0, 20));
    // Grazing circles can cross one edge twice; such meshes are skipped.
    CutCellMesh mesh;
    SrdPlan plan;
    try {
      mesh = generate_mesh(BaseGrid::make({0, 0}, {1.0 + 1e-5, 1.0}, n, n), random_geometry());
      plan = build_plan(mesh, uniform(0.3, 0.7));
    } catch (const Error&) {
      continue;
    }
    double vhat = 0.0;
    for (const auto& h : plan.hoods) vhat += h.weighted_volume;
    CHECK(std::abs(vhat - mesh.flow_volume()) <= 1e-12 * mesh.flow_volume());

    for (int rep = 0; rep < 10; ++rep, ++cases) {
      StateField U(mesh.size(), 1);
      for (double& v : U.raw()) v = uniform(-1, 1);
      double lo = 1e300, hi = -1e300, total = 0.0, scale = 0.0;
      for (int id : mesh.flow_cells()) {
        lo = std::min(lo, U.at(id, 0));
        hi = std::max(hi, U.at(id, 0));
        total += mesh.cell(id).volume * U.at(id, 0);
        scale += mesh.cell(id).volume * std::abs(U.at(id, 0));
      }
      const GradientMode mode = kModes[rep % 3];
      const StateField second = apply_srd(U, plan, mode, rep % 2 == 0);
      double t2 = 0.0;
      for (int id : mesh.flow_cells()) t2 += mesh.cell(id).volume * second.at(id, 0);
      CHECK(std::abs(t2 - total) <= 1e-12 * scale);

      const StateField first = apply_srd(U, plan, mode, false, SrdOrder::First);
      double t1 = 0.0;
      for (int id : mesh.flow_cells()) {
        t1 += mesh.cell(id).volume * first.at(id, 0);
        CHECK(first.at(id, 0) >= lo - 1e-15);
        CHECK(first.at(id, 0) <= hi + 1e-15);
        if (plan.overlap_count[id] == 1 && plan.hoods[plan.hood_of[id]].members.size() == 1) {
          CHECK(std::memcmp(first[id].data(), U[id].data(), sizeof(double)) == 0);
        }
      }
      CHECK(std::abs(t1 - total) <= 1e-12 * scale);
    }
  }
}

// ---------------------------------------------------------------------------
// scheme

TEST_CASE("llf flux is consistent and antisymmetric") {
  const EulerPhysics eu{1.4};
  for (int k = 0; k < kCases; ++k) {
    const auto ql = random_state(), qr = random_state();
    const Vec2 n = random_normal();
    double f[4], g[4];
    llf_flux(eu, ql.data(), qr.data(), n, f);
    llf_flux(eu, qr.data(), ql.data(), -n, g);
    for (int m = 0; m < 4; ++m) CHECK(f[m] == doctest::Approx(-g[m]).epsilon(1e-13).scale(1.0));

    llf_flux(eu, ql.data(), ql.data(), n, f);
    const auto exact = euler_flux(ql, n, 1.4);
    for (int m = 0; m < 4; ++m) CHECK(f[m] == doctest::Approx(exact[m]).epsilon(1e-13).scale(1.0));

    const AdvectionPhysics adv{uniform(-2, 2), uniform(-2, 2)};
    const double ul = uniform(-1, 1), ur = uniform(-1, 1);
    double a1, a2;
    llf_flux(adv, &ul, &ur, n, &a1);
    llf_flux(adv, &ur, &ul, -n, &a2);
    CHECK(a1 == doctest::Approx(-a2).epsilon(1e-14).scale(1.0));
    const double vn = adv.a * n.x + adv.b * n.y;
    CHECK(a1 == doctest::Approx(vn * (vn > 0 ? ul : ur)).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("residual assembly does not depend on face orientation") {
  const EulerPhysics eu{1.4};
  int cases = 0;
  while (cases < 20) {
    CutCellMesh mesh;
    try {
      mesh = generate_mesh(BaseGrid::make({0, 0}, {1.0 + 1e-5, 1.0}, 20, 20), random_geometry());
    } catch (const MultipleCrossings&) {
      continue;
    }
    BoundaryConditions bc;
    MolSolver<EulerPhysics> solver(mesh, nullptr, eu, bc, GradientMode::SecondOrderQuadratic,
                                   cases % 2 == 0);
    StateField U(mesh.size(), 4);
    for (int id = 0; id < mesh.size(); ++id) {
      if (!mesh.cell(id).is_flow()) continue;
      const Vec2 c = mesh.cell(id).centroid;
      const auto q = prim_to_cons({1.0 + 0.3 * std::sin(5 * c.x + uniform(0, 0.1)), 0.4 * c.y,
                                   -0.2 + 0.1 * c.x, 1.0 + 0.2 * c.x * c.y},
                                  1.4);
      for (int m = 0; m < 4; ++m) U.at(id, m) = q[m];
    }
    StateField dudt;
    solver.residual(U, 0.0, dudt);

    // Reassemble with every face traversed from its other side.
    StateField flipped(mesh.size(), 4, 0.0);
    double ql[4], qr[4], f[4];
    const auto face_state = [&](int id, Vec2 p, double* q) {
      solver.reconstruct(U, id, p, q);
      if (!eu.physical(q)) {
        for (int m = 0; m < 4; ++m) q[m] = U.at(id, m);
      }
    };
    for (const GridFace& face : mesh.faces()) {
      face_state(face.hi, face.midpoint, qr);
      face_state(face.lo, face.midpoint, ql);
      llf_flux(eu, qr, ql, -face.normal, f);
      for (int m = 0; m < 4; ++m) {
        flipped.at(face.hi, m) -= f[m] * face.length;
        flipped.at(face.lo, m) += f[m] * face.length;
      }
    }
    for (const WallFace& w : mesh.walls()) {
      solver.reconstruct(U, w.cell, w.midpoint, ql);
      eu.wall_flux(ql, U[w.cell].data(), w.normal, f);
      for (int m = 0; m < 4; ++m) flipped.at(w.cell, m) -= f[m] * w.length;
    }
    for (int id : mesh.flow_cells()) {
      for (int m = 0; m < 4; ++m) {
        const double v = flipped.at(id, m) / mesh.cell(id).volume;
        CHECK(v == doctest::Approx(dudt.at(id, m)).epsilon(1e-13).scale(1.0 / mesh.grid().dx()));
      }
    }
    ++cases;
  }
}
