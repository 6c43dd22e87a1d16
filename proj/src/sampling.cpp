// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace singreg {

HilbertVector random_gaussian(const HilbertVector& like, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd c(like.size());
  for (Index i = 0; i < c.size(); ++i) c[i] = normal(rng);
  return like.with_coeffs(std::move(c));
}

HilbertVector random_smooth_field(std::shared_ptr<const GridDomain> grid, Rng& rng, int modes) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& lo = grid->lower();
  const auto& len = grid->edges();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(grid->size());
  for (int kz = 0; kz < modes; ++kz) {
    for (int ky = 0; ky < modes; ++ky) {
      for (int kx = 0; kx < modes; ++kx) {
        const double amp = normal(rng) / (1.0 + kx * kx + ky * ky + kz * kz);
        for (Index n = 0; n < grid->size(); ++n) {
          const Point3 x = grid->node(n);
          c[n] += amp * std::cos(std::numbers::pi * kx * (x[0] - lo[0]) / len[0]) *
                  std::cos(std::numbers::pi * ky * (x[1] - lo[1]) / len[1]) *
                  std::cos(std::numbers::pi * kz * (x[2] - lo[2]) / len[2]);
        }
      }
    }
  }
  return HilbertVector(std::move(grid), std::move(c));
}

HilbertVector scaled_to_norm(const HilbertVector& v, double target, NormKind kind) {
  const double n = norm(v, kind);
  if (!(n > 0.0)) throw std::invalid_argument("scaled_to_norm: zero vector");
  return (target / n) * v;
}

double random_ball_radius(double R, Index dim, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return R * std::pow(uniform(rng), 1.0 / static_cast<double>(dim));
}

}  // namespace singreg
