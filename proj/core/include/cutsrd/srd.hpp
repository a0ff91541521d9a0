#pragma once

// State redistribution: merging neighborhoods built once per mesh, then a
// conservative postprocess applied to every provisional (unstable) update.
//
// Preprocessing assigns every flow cell a merging neighborhood M, counts how
// many neighborhoods overlap each cell (N), and computes weighted volumes
// V^ = sum V/N and weighted centroids. Postprocessing forms weighted averages
// Q^ over each neighborhood, fits a limited linear reconstruction through
// neighboring weighted averages, and replaces each cell value by the mean of
// the reconstructions of all neighborhoods that overlap it.

#include <optional>
#include <span>
#include <vector>

#include "cutsrd/fields.hpp"
#include "cutsrd/geometry.hpp"
#include "cutsrd/mesh.hpp"
#include "cutsrd/recon.hpp"

namespace cutsrd {

struct LayoutCell {
  bool flow = false;
  double volume = 0.0;
  Vec2 centroid;
  SecondMoments moments;
  /// Unit normal of the embedded boundary pointing into the fluid, if any.
  std::optional<Vec2> inward_normal;
};

/// The subset of mesh data the redistribution needs. Cells are stored on a
/// padded (nx + 2*ghost) x (ny + 2*ghost) grid, row-major, but neighborhoods
/// only ever contain interior cells.
struct CellLayout {
  int nx = 0;
  int ny = 0;
  int ghost = 0;
  double dx = 1.0;
  double dy = 1.0;
  std::vector<LayoutCell> cells;

  int nxp() const { return nx + 2 * ghost; }
  int id(int i, int j) const { return (j + ghost) * nxp() + (i + ghost); }
  std::pair<int, int> ij(int id) const { return {id % nxp() - ghost, id / nxp() - ghost}; }
  bool interior(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
  double full_volume() const { return dx * dy; }
};

CellLayout layout_of(const CutCellMesh& mesh);

enum class HoodKind { Self, Normal, Centered3, Centered5 };

const char* to_string(HoodKind kind);

struct Neighborhood {
  int generator = -1;
  HoodKind kind = HoodKind::Self;
  std::vector<int> members;  // cell ids, ascending
  double weighted_volume = 0.0;
  Vec2 weighted_centroid;
  /// (V/N)-weighted member moments about the weighted centroid.
  SecondMoments weighted_moments;
  /// Neighborhood indices used to fit the linear reconstruction (excluding
  /// this one). Only populated for multi-member neighborhoods, since a
  /// single-member neighborhood evaluates its reconstruction at its own
  /// weighted centroid only.
  std::vector<int> recon_stencil;
  int tile_half_x = 1;
  int tile_half_y = 1;
};

struct SrdPlan {
  CellLayout layout;
  double threshold = 0.5;
  std::vector<Neighborhood> hoods;  // ordered by generator id
  std::vector<int> hood_of;         // cell id -> neighborhood index, -1 if none
  std::vector<int> overlap_count;   // N per cell id (0 outside the flow domain)
  std::vector<std::vector<int>> overlaps;  // W per cell id: neighborhood indices

  std::size_t multi_member_count() const;
  int max_overlap() const;
};

inline constexpr double kDefaultThreshold = 0.5;
inline constexpr int kMaxStencilTile = 9;

/// Builds neighborhoods, overlap counts, weighted volumes/centroids and
/// reconstruction stencils. Throws NeighborhoodTooSmall or StencilExhausted.
SrdPlan build_plan(const CellLayout& layout, double threshold = kDefaultThreshold);
SrdPlan build_plan(const CutCellMesh& mesh, double threshold = kDefaultThreshold);

struct WeightedVolumeCentroid {
  double volume = 0.0;
  Vec2 centroid;
};

/// V^ = sum V/N and x^ = (1/V^) sum (V/N) x over the members. `counts` is
/// indexed by cell id.
WeightedVolumeCentroid weighted_volume_centroid(std::span<const int> members,
                                                std::span<const int> counts,
                                                const CellLayout& layout);

enum class SrdOrder { First, Second };

/// Q^ per neighborhood (neighborhoods x ncomp).
StateField weighted_averages(const StateField& U, const SrdPlan& plan);

/// Linear-reconstruction gradients per neighborhood. Single-member
/// neighborhoods and first-order mode give zero gradients.
GradientField neighborhood_gradients(const StateField& Q, const SrdPlan& plan, GradientMode mode,
                                     bool limiting, SrdOrder order = SrdOrder::Second);

/// Final update following the nested-loop form: zero the flow cells, then
/// every neighborhood (in generator order) adds q^(x_member)/N_member to each
/// member. Cells outside the flow domain keep their values from U.
StateField final_update(const StateField& U, const SrdPlan& plan, const StateField& Q,
                        const GradientField& grads);

StateField apply_srd(const StateField& U, const SrdPlan& plan, GradientMode mode, bool limiting,
                     SrdOrder order = SrdOrder::Second);

/// apply_srd with the neighborhood least-squares systems factored once.
class Redistributor {
 public:
  Redistributor(const SrdPlan& plan, GradientMode mode, bool limiting,
                SrdOrder order = SrdOrder::Second);

  /// Redistributes U in place.
  void apply(StateField& U) const;

  const SrdPlan& plan() const { return *plan_; }

 private:
  void gradients(const StateField& Q, GradientField& out) const;

  const SrdPlan* plan_;
  GradientMode mode_;
  bool limiting_;
  SrdOrder order_;
  // Per neighborhood: range into the stencil arrays.
  std::vector<int> begin_;
  std::vector<int> stencil_;
  std::vector<Vec2> weights_;
  std::vector<Vec2> offsets_;
  mutable StateField q_;
  mutable GradientField g_;
  mutable std::vector<double> vals_;

  friend GradientField neighborhood_gradients(const StateField&, const SrdPlan&, GradientMode,
                                              bool, SrdOrder);
};

}  // namespace cutsrd
