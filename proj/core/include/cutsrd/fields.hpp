#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "cutsrd/geometry.hpp"

namespace cutsrd {

/// Per-cell vector of conserved components, stored cell-major.
class StateField {
 public:
  StateField() = default;
  StateField(std::size_t cells, int ncomp, double fill = 0.0)
      : ncomp_(ncomp), data_(cells * static_cast<std::size_t>(ncomp), fill) {}

  int ncomp() const { return ncomp_; }
  std::size_t size() const { return ncomp_ == 0 ? 0 : data_.size() / ncomp_; }

  std::span<double> operator[](std::size_t cell) {
    return {data_.data() + cell * ncomp_, static_cast<std::size_t>(ncomp_)};
  }
  std::span<const double> operator[](std::size_t cell) const {
    return {data_.data() + cell * ncomp_, static_cast<std::size_t>(ncomp_)};
  }
  double& at(std::size_t cell, int comp) { return data_[cell * ncomp_ + comp]; }
  double at(std::size_t cell, int comp) const { return data_[cell * ncomp_ + comp]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  int ncomp_ = 0;
  std::vector<double> data_;
};

/// Per-cell, per-component gradient (sigma_x, sigma_y).
class GradientField {
 public:
  GradientField() = default;
  GradientField(std::size_t cells, int ncomp)
      : ncomp_(ncomp), data_(cells * static_cast<std::size_t>(ncomp)) {}

  int ncomp() const { return ncomp_; }
  std::size_t size() const { return ncomp_ == 0 ? 0 : data_.size() / ncomp_; }
  Vec2& at(std::size_t cell, int comp) { return data_[cell * ncomp_ + comp]; }
  Vec2 at(std::size_t cell, int comp) const { return data_[cell * ncomp_ + comp]; }
  void set_zero() { std::fill(data_.begin(), data_.end(), Vec2{}); }

 private:
  int ncomp_ = 0;
  std::vector<Vec2> data_;
};

}  // namespace cutsrd
