#include "cutsrd/recon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "cutsrd/errors.hpp"

namespace cutsrd {

double mc_slope(double left, double center, double right, double h) {
  const double dc = (right - left) / (2.0 * h);
  const double dp = (right - center) / h;
  const double dm = (center - left) / h;
  if (!(dp * dm > 0.0)) return 0.0;
  const double mag = std::min({std::abs(dc), 2.0 * std::abs(dp), 2.0 * std::abs(dm)});
  return std::copysign(mag, dc);
}

std::vector<Vec2> mc_slope_pair(const StateField& U, const CutCellMesh& mesh, int i, int j) {
  const int c = mesh.id(i, j);
  const int w = mesh.id(i - 1, j), e = mesh.id(i + 1, j);
  const int s = mesh.id(i, j - 1), n = mesh.id(i, j + 1);
  const double dx = mesh.grid().dx(), dy = mesh.grid().dy();
  std::vector<Vec2> out(U.ncomp());
  for (int k = 0; k < U.ncomp(); ++k) {
    out[k] = {mc_slope(U.at(w, k), U.at(c, k), U.at(e, k), dx),
              mc_slope(U.at(s, k), U.at(c, k), U.at(n, k), dy)};
  }
  return out;
}

std::vector<Vec2> lsq_weights(std::span<const Vec2> offsets, GradientMode mode,
                              const LsqMoments* moments, Vec2 scale, bool drop_flat_columns) {
  const int m = static_cast<int>(offsets.size());
  const int p = lsq_unknowns(mode);
  const bool use_moments = mode == GradientMode::SecondOrderQuadratic;
  if (use_moments && (moments == nullptr || moments->neighbors.size() != offsets.size())) {
    throw Error("second-order quadratic fit requires one moment triple per neighbor");
  }

  Eigen::MatrixXd a(m, p);
  for (int r = 0; r < m; ++r) {
    const double dx = offsets[r].x / scale.x;
    const double dy = offsets[r].y / scale.y;
    a(r, 0) = dx;
    a(r, 1) = dy;
    if (p == 5) {
      double sxx = 0.0, sxy = 0.0, syy = 0.0;
      if (use_moments) {
        const SecondMoments& sr = moments->neighbors[r];
        const SecondMoments& sc = moments->center;
        sxx = (sr.xx - sc.xx) / (scale.x * scale.x);
        sxy = (sr.xy - sc.xy) / (scale.x * scale.y);
        syy = (sr.yy - sc.yy) / (scale.y * scale.y);
      }
      a(r, 2) = 0.5 * (dx * dx + sxx);
      a(r, 3) = dx * dy + sxy;
      a(r, 4) = 0.5 * (dy * dy + syy);
    }
  }

  std::vector<int> kept;
  for (int c = 0; c < p; ++c) {
    if (!drop_flat_columns || (m > 0 && a.col(c).cwiseAbs().maxCoeff() > 0.0)) kept.push_back(c);
  }
  const int q = static_cast<int>(kept.size());
  std::vector<Vec2> w(m);
  if (q == 0) return w;
  if (m < q) {
    throw IllConditioned("least-squares stencil has " + std::to_string(m) + " rows for " +
                         std::to_string(q) + " unknowns");
  }

  Eigen::MatrixXd reduced(m, q);
  for (int c = 0; c < q; ++c) reduced.col(c) = a.col(kept[c]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(reduced);
  const auto& r = qr.matrixR();
  const double rmax = std::abs(r(0, 0));
  const double rmin = std::abs(r(q - 1, q - 1));
  if (!(rmin > 0.0) || rmax / rmin > kMaxCondition) {
    throw IllConditioned("least-squares condition estimate exceeds limit");
  }
  const Eigen::MatrixXd x = qr.solve(Eigen::MatrixXd::Identity(m, m));

  const auto col_of = [&](int c) {
    for (int k = 0; k < q; ++k) {
      if (kept[k] == c) return k;
    }
    return -1;
  };
  const int cx = col_of(0), cy = col_of(1);
  for (int k = 0; k < m; ++k) {
    w[k].x = cx < 0 ? 0.0 : x(cx, k) / scale.x;
    w[k].y = cy < 0 ? 0.0 : x(cy, k) / scale.y;
  }
  return w;
}

Vec2 lsq_gradient(std::span<const double> values, std::span<const Vec2> centroids,
                  double center_value, Vec2 center_point, GradientMode mode,
                  const LsqMoments* moments, Vec2 scale) {
  std::vector<Vec2> offsets(centroids.size());
  for (std::size_t k = 0; k < centroids.size(); ++k) offsets[k] = centroids[k] - center_point;
  const auto w = lsq_weights(offsets, mode, moments, scale);
  Vec2 g;
  for (std::size_t k = 0; k < w.size(); ++k) g += (values[k] - center_value) * w[k];
  return g;
}

double bj_alpha(Vec2 gradient, double center_value, Vec2 center_point,
                std::span<const double> values, std::span<const Vec2> points) {
  double lo = center_value, hi = center_value;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double alpha = 1.0;
  for (const Vec2& p : points) {
    const double d = dot(gradient, p - center_point);
    if (d > 0.0) {
      alpha = std::min(alpha, (hi - center_value) / d);
    } else if (d < 0.0) {
      alpha = std::min(alpha, (lo - center_value) / d);
    }
  }
  return std::max(alpha, 0.0);
}

// ---------------------------------------------------------------------------

BaseGradientOperator::BaseGradientOperator(const CutCellMesh& mesh, GradientMode mode)
    : mesh_(&mesh), mode_(mode), ops_(mesh.size()) {
  const int g = CutCellMesh::kGhost;
  const Vec2 scale{mesh.grid().dx(), mesh.grid().dy()};
  std::vector<int> ids;
  std::vector<Vec2> offs;
  std::vector<SecondMoments> mom;

  for (int j = -g + 1; j < mesh.ny() + g - 1; ++j) {
    for (int i = -g + 1; i < mesh.nx() + g - 1; ++i) {
      const int id = mesh.id(i, j);
      const CellGeom& c = mesh.cell(id);
      if (!c.is_flow()) continue;

      bool regular = c.cls == CellClass::Full;
      for (int s = j - 1; s <= j + 1 && regular; ++s) {
        for (int r = i - 1; r <= i + 1 && regular; ++r) {
          regular = mesh.cell(r, s).cls == CellClass::Full;
        }
      }
      if (regular) {
        ops_[id].kind = Kind::Regular;
        continue;
      }

      int half = (c.cls == CellClass::Cut && mode != GradientMode::FirstOrderLSQ) ? 2 : 1;
      bool done = false;
      for (; half <= 3 && !done; ++half) {
        ids.clear();
        offs.clear();
        mom.clear();
        for (int s = j - half; s <= j + half; ++s) {
          for (int r = i - half; r <= i + half; ++r) {
            if ((r == i && s == j) || !mesh.in_padded(r, s)) continue;
            const int nid = mesh.id(r, s);
            const CellGeom& nc = mesh.cell(nid);
            if (!nc.is_flow()) continue;
            ids.push_back(nid);
            offs.push_back(nc.centroid - c.centroid);
            mom.push_back(nc.moments);
          }
        }
        try {
          const LsqMoments lm{c.moments, mom};
          const auto w = lsq_weights(offs, mode, &lm, scale);
          ops_[id] = {Kind::Lsq, static_cast<int>(stencil_.size()),
                      static_cast<int>(stencil_.size() + ids.size())};
          stencil_.insert(stencil_.end(), ids.begin(), ids.end());
          weights_.insert(weights_.end(), w.begin(), w.end());
          offsets_.insert(offsets_.end(), offs.begin(), offs.end());
          done = true;
        } catch (const IllConditioned&) {
        }
      }
      if (!done && mesh.is_interior(i, j)) {
        throw IllConditioned("gradient stencil ill-conditioned after enlargement to 7x7 at cell (" +
                                 std::to_string(i) + ", " + std::to_string(j) + ")",
                             id);
      }
    }
  }
}

std::size_t BaseGradientOperator::lsq_cell_count() const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [](const CellOp& o) { return o.kind == Kind::Lsq; }));
}

void BaseGradientOperator::compute(const StateField& U, bool limiting, GradientField& out) const {
  const CutCellMesh& mesh = *mesh_;
  const int nc = U.ncomp();
  if (out.size() != static_cast<std::size_t>(mesh.size()) || out.ncomp() != nc) {
    out = GradientField(mesh.size(), nc);
  }
  const int nxp = mesh.nxp();
  const double dx = mesh.grid().dx(), dy = mesh.grid().dy();
  std::vector<double> vals;

  for (int id = 0; id < mesh.size(); ++id) {
    const CellOp& op = ops_[id];
    switch (op.kind) {
      case Kind::None:
        for (int k = 0; k < nc; ++k) out.at(id, k) = {};
        break;
      case Kind::Regular:
        for (int k = 0; k < nc; ++k) {
          const double uc = U.at(id, k);
          const double uw = U.at(id - 1, k), ue = U.at(id + 1, k);
          const double us = U.at(id - nxp, k), un = U.at(id + nxp, k);
          if (limiting) {
            out.at(id, k) = {mc_slope(uw, uc, ue, dx), mc_slope(us, uc, un, dy)};
          } else {
            out.at(id, k) = {(ue - uw) / (2.0 * dx), (un - us) / (2.0 * dy)};
          }
        }
        break;
      case Kind::Lsq: {
        const std::span<const int> st(stencil_.data() + op.begin, op.end - op.begin);
        const std::span<const Vec2> w(weights_.data() + op.begin, op.end - op.begin);
        const std::span<const Vec2> off(offsets_.data() + op.begin, op.end - op.begin);
        for (int k = 0; k < nc; ++k) {
          const double uc = U.at(id, k);
          Vec2 grad;
          for (std::size_t s = 0; s < st.size(); ++s) grad += (U.at(st[s], k) - uc) * w[s];
          if (limiting) {
            vals.resize(st.size());
            for (std::size_t s = 0; s < st.size(); ++s) vals[s] = U.at(st[s], k);
            // Stencil points are given relative to the center.
            grad = bj_limit(grad, uc, Vec2{}, vals, off);
          }
          out.at(id, k) = grad;
        }
        break;
      }
    }
  }
}

GradientField compute_base_gradients(const CutCellMesh& mesh, const StateField& U,
                                     GradientMode mode, bool limiting) {
  GradientField out(mesh.size(), U.ncomp());
  BaseGradientOperator(mesh, mode).compute(U, limiting, out);
  return out;
}

}  // namespace cutsrd
