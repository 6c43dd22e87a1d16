// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

namespace singreg {

using Index = Eigen::Index;
using Point3 = std::array<double, 3>;

/// Axis-aligned box in R^3 carrying a uniform tensor-product grid.
///
/// Nodes are stored with the x index running fastest:
/// flat = i + nx * (j + ny * k).
class GridDomain {
 public:
  GridDomain(Point3 lower, Point3 edges, std::array<int, 3> points);

  static GridDomain unit_cube(int points_per_axis);

  const Point3& lower() const noexcept { return lower_; }
  const Point3& edges() const noexcept { return edges_; }
  const std::array<int, 3>& points() const noexcept { return points_; }
  const Point3& spacing() const noexcept { return spacing_; }

  Index size() const noexcept { return size_; }
  double volume() const noexcept { return edges_[0] * edges_[1] * edges_[2]; }
  double cell_volume() const noexcept { return spacing_[0] * spacing_[1] * spacing_[2]; }

  Index index(int i, int j, int k) const noexcept {
    return i + static_cast<Index>(points_[0]) * (j + static_cast<Index>(points_[1]) * k);
  }
  std::array<int, 3> multi_index(Index flat) const noexcept;
  Point3 node(int i, int j, int k) const noexcept;
  Point3 node(Index flat) const noexcept;

  /// Tensor-product trapezoidal weights, one per node; they sum to volume().
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  /// Samples f at every node.
  template <class F>
  Eigen::VectorXd sample(F&& f) const {
    Eigen::VectorXd out(size_);
    for (Index n = 0; n < size_; ++n) out[n] = f(node(n));
    return out;
  }

  bool operator==(const GridDomain& other) const noexcept {
    return lower_ == other.lower_ && edges_ == other.edges_ && points_ == other.points_;
  }

 private:
  Point3 lower_;
  Point3 edges_;
  std::array<int, 3> points_;
  Point3 spacing_;
  Index size_;
  Eigen::VectorXd weights_;
};

}  // namespace singreg
