#include "cutsrd/srd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutsrd/errors.hpp"

namespace cutsrd {

namespace {

// tan(22.5 deg): a normal component below this fraction of the other one is
// rounded to zero when picking a compass direction.
constexpr double kTan22_5 = 0.41421356237309503;

std::string cell_label(const CellLayout& layout, int id) {
  const auto [i, j] = layout.ij(id);
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

std::vector<int> tile_flow_cells(const CellLayout& layout, int i, int j, int hx, int hy) {
  std::vector<int> out;
  for (int s = j - hy; s <= j + hy; ++s) {
    for (int r = i - hx; r <= i + hx; ++r) {
      if (!layout.interior(r, s)) continue;
      const int id = layout.id(r, s);
      if (layout.cells[id].flow) out.push_back(id);
    }
  }
  return out;
}

double sum_volume(const CellLayout& layout, const std::vector<int>& ids) {
  double v = 0.0;
  for (int id : ids) v += layout.cells[id].volume;
  return v;
}

// Neighborhood indices generated by flow cells of the tile, excluding `self`.
std::vector<int> hood_stencil(const SrdPlan& plan, int self, int hx, int hy) {
  const CellLayout& L = plan.layout;
  const auto [i, j] = L.ij(plan.hoods[self].generator);
  std::vector<int> out;
  for (int id : tile_flow_cells(L, i, j, hx, hy)) {
    const int h = plan.hood_of[id];
    if (h >= 0 && h != self) out.push_back(h);
  }
  return out;
}

}  // namespace

const char* to_string(HoodKind kind) {
  switch (kind) {
    case HoodKind::Self: return "self";
    case HoodKind::Normal: return "normal";
    case HoodKind::Centered3: return "centered3";
    case HoodKind::Centered5: return "centered5";
  }
  return "?";
}

CellLayout layout_of(const CutCellMesh& mesh) {
  CellLayout L;
  L.nx = mesh.nx();
  L.ny = mesh.ny();
  L.ghost = CutCellMesh::kGhost;
  L.dx = mesh.grid().dx();
  L.dy = mesh.grid().dy();
  L.cells.resize(mesh.size());
  for (int id = 0; id < mesh.size(); ++id) {
    const CellGeom& c = mesh.cell(id);
    LayoutCell& lc = L.cells[id];
    lc.flow = c.is_flow() && mesh.is_interior(id);
    lc.volume = c.volume;
    lc.centroid = c.centroid;
    lc.moments = c.moments;
    if (c.cls == CellClass::Cut && c.boundary_length > 0.0) lc.inward_normal = -c.boundary_normal;
  }
  return L;
}

std::size_t SrdPlan::multi_member_count() const {
  return static_cast<std::size_t>(std::count_if(
      hoods.begin(), hoods.end(), [](const Neighborhood& h) { return h.members.size() > 1; }));
}

int SrdPlan::max_overlap() const {
  return overlap_count.empty() ? 0 : *std::max_element(overlap_count.begin(), overlap_count.end());
}

WeightedVolumeCentroid weighted_volume_centroid(std::span<const int> members,
                                                std::span<const int> counts,
                                                const CellLayout& layout) {
  WeightedVolumeCentroid out;
  Vec2 first;
  for (int id : members) {
    const LayoutCell& c = layout.cells[id];
    const double w = c.volume / counts[id];
    out.volume += w;
    first += w * c.centroid;
  }
  out.centroid = (1.0 / out.volume) * first;
  return out;
}

SrdPlan build_plan(const CutCellMesh& mesh, double threshold) {
  return build_plan(layout_of(mesh), threshold);
}

SrdPlan build_plan(const CellLayout& layout, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error("SRD threshold must lie in (0, 1]");
  SrdPlan plan;
  plan.layout = layout;
  plan.threshold = threshold;
  const CellLayout& L = plan.layout;
  const int n = static_cast<int>(L.cells.size());
  const double vmin = threshold * L.full_volume();
  plan.hood_of.assign(n, -1);
  plan.overlap_count.assign(n, 0);
  plan.overlaps.assign(n, {});

  for (int id = 0; id < n; ++id) {
    const LayoutCell& c = L.cells[id];
    if (!c.flow) continue;
    const auto [i, j] = L.ij(id);
    Neighborhood h;
    h.generator = id;
    if (c.volume >= vmin) {
      h.kind = HoodKind::Self;
      h.members = {id};
    } else {
      bool found = false;
      if (c.inward_normal) {
        const Vec2 nv = *c.inward_normal;
        const int di = std::abs(nv.x) >= kTan22_5 * std::abs(nv.y) ? sgn(nv.x) : 0;
        const int dj = std::abs(nv.y) >= kTan22_5 * std::abs(nv.x) ? sgn(nv.y) : 0;
        const int ti = i + di, tj = j + dj;
        if ((di != 0 || dj != 0) && L.interior(ti, tj) && L.cells[L.id(ti, tj)].flow) {
          std::vector<int> m{id, L.id(ti, tj)};
          std::sort(m.begin(), m.end());
          if (sum_volume(L, m) >= vmin) {
            h.kind = HoodKind::Normal;
            h.members = std::move(m);
            found = true;
          }
        }
      }
      for (int half = 1; half <= 2 && !found; ++half) {
        auto m = tile_flow_cells(L, i, j, half, half);
        if (sum_volume(L, m) >= vmin) {
          h.kind = half == 1 ? HoodKind::Centered3 : HoodKind::Centered5;
          h.members = std::move(m);
          found = true;
        }
      }
      if (!found) {
        throw NeighborhoodTooSmall(
            "merging neighborhood of cell " + cell_label(L, id) + " stays below the volume threshold",
            id);
      }
    }
    plan.hood_of[id] = static_cast<int>(plan.hoods.size());
    plan.hoods.push_back(std::move(h));
  }

  for (int hi = 0; hi < static_cast<int>(plan.hoods.size()); ++hi) {
    for (int m : plan.hoods[hi].members) {
      ++plan.overlap_count[m];
      plan.overlaps[m].push_back(hi);
    }
  }

  for (Neighborhood& h : plan.hoods) {
    if (h.members.size() == 1) {
      const LayoutCell& c = L.cells[h.members[0]];
      h.weighted_volume = c.volume / plan.overlap_count[h.members[0]];
      h.weighted_centroid = c.centroid;
      h.weighted_moments = c.moments;
      continue;
    }
    const auto wc = weighted_volume_centroid(h.members, plan.overlap_count, L);
    h.weighted_volume = wc.volume;
    h.weighted_centroid = wc.centroid;
    SecondMoments s;
    for (int m : h.members) {
      const LayoutCell& c = L.cells[m];
      const double w = c.volume / plan.overlap_count[m];
      const Vec2 d = c.centroid - wc.centroid;
      s.xx += w * (c.moments.xx + d.x * d.x);
      s.xy += w * (c.moments.xy + d.x * d.y);
      s.yy += w * (c.moments.yy + d.y * d.y);
    }
    h.weighted_moments = {s.xx / wc.volume, s.xy / wc.volume, s.yy / wc.volume};
  }

  // Reconstruction stencils. A tile direction is widened while no stencil
  // centroid is at least half a cell away from the neighborhood centroid in
  // that direction; running out of domain ends the widening quietly.
  const int cap = kMaxStencilTile / 2;
  for (int hi = 0; hi < static_cast<int>(plan.hoods.size()); ++hi) {
    Neighborhood& h = plan.hoods[hi];
    if (h.members.size() == 1) continue;
    const auto [i, j] = L.ij(h.generator);
    int hx = 1, hy = 1;
    const auto spread = [&](int ax, int ay, bool in_x) {
      for (int k : hood_stencil(plan, hi, ax, ay)) {
        const Vec2 d = plan.hoods[k].weighted_centroid - h.weighted_centroid;
        if (in_x ? std::abs(d.x) >= 0.5 * L.dx : std::abs(d.y) >= 0.5 * L.dy) return true;
      }
      return false;
    };
    while (!spread(hx, hy, true)) {
      if (i - hx <= 0 && i + hx >= L.nx - 1) break;
      if (hx == cap) {
        throw StencilExhausted("no reconstruction stencil in x for neighborhood of cell " +
                                   cell_label(L, h.generator),
                               h.generator);
      }
      ++hx;
    }
    while (!spread(hx, hy, false)) {
      if (j - hy <= 0 && j + hy >= L.ny - 1) break;
      if (hy == cap) {
        throw StencilExhausted("no reconstruction stencil in y for neighborhood of cell " +
                                   cell_label(L, h.generator),
                               h.generator);
      }
      ++hy;
    }
    h.tile_half_x = hx;
    h.tile_half_y = hy;
    h.recon_stencil = hood_stencil(plan, hi, hx, hy);
  }
  return plan;
}

// ---------------------------------------------------------------------------

Redistributor::Redistributor(const SrdPlan& plan, GradientMode mode, bool limiting,
                             SrdOrder order)
    : plan_(&plan), mode_(mode), limiting_(limiting), order_(order) {
  const int nh = static_cast<int>(plan.hoods.size());
  begin_.assign(nh + 1, 0);
  if (order_ == SrdOrder::First) return;

  const CellLayout& L = plan.layout;
  const Vec2 scale{L.dx, L.dy};
  const int cap = kMaxStencilTile / 2;
  const int min_half = mode == GradientMode::FirstOrderLSQ ? 1 : 2;
  const bool strip = L.nx == 1 || L.ny == 1;
  std::vector<Vec2> offs;
  std::vector<SecondMoments> mom;

  for (int hi = 0; hi < nh; ++hi) {
    begin_[hi] = static_cast<int>(stencil_.size());
    const Neighborhood& h = plan.hoods[hi];
    if (h.members.size() == 1) continue;

    int hx = std::max(h.tile_half_x, min_half);
    int hy = std::max(h.tile_half_y, min_half);
    bool done = false;
    while (!done) {
      const auto st = (hx == h.tile_half_x && hy == h.tile_half_y)
                          ? h.recon_stencil
                          : hood_stencil(plan, hi, hx, hy);
      offs.clear();
      mom.clear();
      for (int k : st) {
        offs.push_back(plan.hoods[k].weighted_centroid - h.weighted_centroid);
        mom.push_back(plan.hoods[k].weighted_moments);
      }
      try {
        const LsqMoments lm{h.weighted_moments, mom};
        const auto w = lsq_weights(offs, mode, &lm, scale, strip);
        stencil_.insert(stencil_.end(), st.begin(), st.end());
        weights_.insert(weights_.end(), w.begin(), w.end());
        offsets_.insert(offsets_.end(), offs.begin(), offs.end());
        done = true;
      } catch (const IllConditioned&) {
        if (hx >= cap && hy >= cap) {
          throw IllConditioned("neighborhood gradient ill-conditioned at cell " +
                                   cell_label(L, h.generator),
                               h.generator);
        }
        hx = std::min(hx + 1, cap);
        hy = std::min(hy + 1, cap);
      }
    }
  }
  begin_[nh] = static_cast<int>(stencil_.size());
}

void Redistributor::gradients(const StateField& Q, GradientField& out) const {
  const SrdPlan& plan = *plan_;
  const int nh = static_cast<int>(plan.hoods.size());
  const int nc = Q.ncomp();
  if (out.size() != static_cast<std::size_t>(nh) || out.ncomp() != nc) {
    out = GradientField(nh, nc);
  } else {
    out.set_zero();
  }
  if (order_ == SrdOrder::First) return;

  for (int hi = 0; hi < nh; ++hi) {
    const int b = begin_[hi], e = begin_[hi + 1];
    if (b == e) continue;
    const std::span<const int> st(stencil_.data() + b, e - b);
    const std::span<const Vec2> w(weights_.data() + b, e - b);
    const std::span<const Vec2> off(offsets_.data() + b, e - b);
    for (int k = 0; k < nc; ++k) {
      const double qc = Q.at(hi, k);
      Vec2 g;
      for (std::size_t s = 0; s < st.size(); ++s) g += (Q.at(st[s], k) - qc) * w[s];
      if (limiting_) {
        vals_.resize(st.size());
        for (std::size_t s = 0; s < st.size(); ++s) vals_[s] = Q.at(st[s], k);
        g = bj_limit(g, qc, Vec2{}, vals_, off);
      }
      out.at(hi, k) = g;
    }
  }
}

StateField weighted_averages(const StateField& U, const SrdPlan& plan) {
  const int nc = U.ncomp();
  StateField Q(plan.hoods.size(), nc);
  for (std::size_t hi = 0; hi < plan.hoods.size(); ++hi) {
    const Neighborhood& h = plan.hoods[hi];
    if (h.members.size() == 1) {
      for (int k = 0; k < nc; ++k) Q.at(hi, k) = U.at(h.members[0], k);
      continue;
    }
    for (int k = 0; k < nc; ++k) {
      double s = 0.0;
      for (int m : h.members) {
        s += plan.layout.cells[m].volume / plan.overlap_count[m] * U.at(m, k);
      }
      Q.at(hi, k) = s / h.weighted_volume;
    }
  }
  return Q;
}

GradientField neighborhood_gradients(const StateField& Q, const SrdPlan& plan, GradientMode mode,
                                     bool limiting, SrdOrder order) {
  GradientField out;
  Redistributor(plan, mode, limiting, order).gradients(Q, out);
  return out;
}

namespace {

void accumulate(StateField& out, const SrdPlan& plan, const StateField& Q,
                const GradientField& grads) {
  const int nc = Q.ncomp();
  const CellLayout& L = plan.layout;
  for (const Neighborhood& h : plan.hoods) {
    for (int m : h.members) {
      for (int k = 0; k < nc; ++k) out.at(m, k) = 0.0;
    }
  }
  for (std::size_t hi = 0; hi < plan.hoods.size(); ++hi) {
    const Neighborhood& h = plan.hoods[hi];
    const bool single = h.members.size() == 1;
    for (int m : h.members) {
      const int nm = plan.overlap_count[m];
      const Vec2 d = L.cells[m].centroid - h.weighted_centroid;
      for (int k = 0; k < nc; ++k) {
        double q = Q.at(hi, k);
        if (!single) q += dot(grads.at(hi, k), d);
        out.at(m, k) += q / nm;
      }
    }
  }
}

}  // namespace

StateField final_update(const StateField& U, const SrdPlan& plan, const StateField& Q,
                        const GradientField& grads) {
  StateField out = U;
  accumulate(out, plan, Q, grads);
  return out;
}

StateField apply_srd(const StateField& U, const SrdPlan& plan, GradientMode mode, bool limiting,
                     SrdOrder order) {
  StateField out = U;
  Redistributor(plan, mode, limiting, order).apply(out);
  return out;
}

void Redistributor::apply(StateField& U) const {
  const SrdPlan& plan = *plan_;
  q_ = weighted_averages(U, plan);
  gradients(q_, g_);
  accumulate(U, plan, q_, g_);
}

}  // namespace cutsrd
