#pragma once

// Gradient reconstruction on the base grid: monotonized-central slopes on
// regular stencils, least-squares fits on irregular ones, and scalar
// Barth-Jespersen limiting evaluated at stencil centroids.

#include <cstdint>
#include <span>
#include <vector>

#include "cutsrd/fields.hpp"
#include "cutsrd/geometry.hpp"
#include "cutsrd/mesh.hpp"

namespace cutsrd {

enum class GradientMode {
  FirstOrderLSQ,         // linear fit
  PointwiseQuadratic,    // quadratic fit treating averages as point values
  SecondOrderQuadratic,  // quadratic fit of cell averages using second moments
};

constexpr int lsq_unknowns(GradientMode mode) {
  return mode == GradientMode::FirstOrderLSQ ? 2 : 5;
}

/// Largest accepted condition estimate of the column-scaled system.
inline constexpr double kMaxCondition = 1e8;

/// MC-limited slope from three equally spaced values.
double mc_slope(double left, double center, double right, double h);

/// MC slopes of every component of U at regular cell (i, j).
std::vector<Vec2> mc_slope_pair(const StateField& U, const CutCellMesh& mesh, int i, int j);

/// Second moments entering the quadratic fit of cell averages. Each row of
/// the system uses (d^2 + S_neighbor - S_center) in place of the pointwise d^2.
struct LsqMoments {
  SecondMoments center;
  std::span<const SecondMoments> neighbors;
};

/// Linear weights mapping neighbor differences to a gradient:
/// grad = sum_k w[k] * (value_k - center_value).
/// `offsets` are neighbor points relative to the center point; `scale` is
/// the column scaling (typically dx, dy). With `drop_flat_columns`, columns
/// that vanish identically (a single-row strip, say) are dropped and their
/// coefficients set to zero. Throws IllConditioned when the scaled system has
/// fewer rows than unknowns or a condition estimate above kMaxCondition.
std::vector<Vec2> lsq_weights(std::span<const Vec2> offsets, GradientMode mode,
                              const LsqMoments* moments = nullptr, Vec2 scale = {1.0, 1.0},
                              bool drop_flat_columns = false);

Vec2 lsq_gradient(std::span<const double> values, std::span<const Vec2> centroids,
                  double center_value, Vec2 center_point, GradientMode mode,
                  const LsqMoments* moments = nullptr, Vec2 scale = {1.0, 1.0});

/// Barth-Jespersen factor in [0, 1] so that the linear reconstruction
/// evaluated at every stencil point stays within the stencil min/max (the
/// center value included in both).
double bj_alpha(Vec2 gradient, double center_value, Vec2 center_point,
                std::span<const double> values, std::span<const Vec2> points);

inline Vec2 bj_limit(Vec2 gradient, double center_value, Vec2 center_point,
                     std::span<const double> values, std::span<const Vec2> points) {
  return bj_alpha(gradient, center_value, center_point, values, points) * gradient;
}

/// Precomputed base-grid gradient operator. Geometry is fixed, so every
/// least-squares system is factored once and stored as weights.
class BaseGradientOperator {
 public:
  BaseGradientOperator(const CutCellMesh& mesh, GradientMode mode);

  /// Fills `out` for every flow cell of the padded grid except the outermost
  /// ghost ring, which gets zero gradients.
  void compute(const StateField& U, bool limiting, GradientField& out) const;

  GradientMode mode() const { return mode_; }
  std::size_t lsq_cell_count() const;

 private:
  enum class Kind : std::uint8_t { None, Regular, Lsq };
  struct CellOp {
    Kind kind = Kind::None;
    int begin = 0;
    int end = 0;
  };

  const CutCellMesh* mesh_;
  GradientMode mode_;
  std::vector<CellOp> ops_;
  std::vector<int> stencil_;
  std::vector<Vec2> weights_;
  std::vector<Vec2> offsets_;
};

GradientField compute_base_gradients(const CutCellMesh& mesh, const StateField& U,
                                     GradientMode mode, bool limiting);

}  // namespace cutsrd
