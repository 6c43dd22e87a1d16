// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace singreg {

namespace {

Eigen::VectorXd trapezoid_1d(int n, double h) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w[0] *= 0.5;
  w[n - 1] *= 0.5;
  return w;
}

}  // namespace

GridDomain::GridDomain(Point3 lower, Point3 edges, std::array<int, 3> points)
    : lower_(lower), edges_(edges), points_(points) {
  for (int a = 0; a < 3; ++a) {
    if (!(edges_[a] > 0.0) || !std::isfinite(edges_[a]) || !std::isfinite(lower_[a])) {
      throw std::invalid_argument("GridDomain: edge lengths must be finite and positive");
    }
    if (points_[a] < 2) {
      throw std::invalid_argument("GridDomain: need at least 2 points per axis, got " +
                                  std::to_string(points_[a]));
    }
    spacing_[a] = edges_[a] / (points_[a] - 1);
  }
  size_ = static_cast<Index>(points_[0]) * points_[1] * points_[2];

  const Eigen::VectorXd wx = trapezoid_1d(points_[0], spacing_[0]);
  const Eigen::VectorXd wy = trapezoid_1d(points_[1], spacing_[1]);
  const Eigen::VectorXd wz = trapezoid_1d(points_[2], spacing_[2]);
  weights_.resize(size_);
  for (int k = 0; k < points_[2]; ++k)
    for (int j = 0; j < points_[1]; ++j)
      for (int i = 0; i < points_[0]; ++i) weights_[index(i, j, k)] = wx[i] * wy[j] * wz[k];
}

GridDomain GridDomain::unit_cube(int points_per_axis) {
  return GridDomain({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0},
                    {points_per_axis, points_per_axis, points_per_axis});
}

std::array<int, 3> GridDomain::multi_index(Index flat) const noexcept {
  const int i = static_cast<int>(flat % points_[0]);
  flat /= points_[0];
  const int j = static_cast<int>(flat % points_[1]);
  const int k = static_cast<int>(flat / points_[1]);
  return {i, j, k};
}

Point3 GridDomain::node(int i, int j, int k) const noexcept {
  return {lower_[0] + i * spacing_[0], lower_[1] + j * spacing_[1], lower_[2] + k * spacing_[2]};
}

Point3 GridDomain::node(Index flat) const noexcept {
  const auto [i, j, k] = multi_index(flat);
  return node(i, j, k);
}

}  // namespace singreg
