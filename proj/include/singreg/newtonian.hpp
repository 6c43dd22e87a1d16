// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include <Eigen/Core>

#include "singreg/grid.hpp"
#include "singreg/operator.hpp"

namespace singreg {

/// Kernel of the Newtonian potential, g(x, s) = 1 / (4 pi |x - s|).
double newtonian_kernel(const Point3& x, const Point3& s) noexcept;

/// Integral of g over a ball centered at the singularity with the given
/// volume: a^2 / 2 with a = (3 volume / (4 pi))^(1/3).
double newtonian_self_cell(double volume) noexcept;

/// Discretized F(u) = G u^3 - f on a grid, with
/// G[i][j] = w_j g(x_i, x_j) off the diagonal and the self-cell integral for a
/// ball of volume w_i on the diagonal (w = trapezoidal weights).
///
/// The kernel is stored densely up to `dense_limit` nodes; larger grids use a
/// translation-invariant offset table and an O(N^2) matrix-free product.
class NewtonianCubicOperator final : public OperatorModel {
 public:
  static constexpr Index kDefaultDenseLimit = 4096;

  explicit NewtonianCubicOperator(GridDomain grid, Eigen::VectorXd shift = {},
                                  Index dense_limit = kDefaultDenseLimit);
  explicit NewtonianCubicOperator(std::shared_ptr<const GridDomain> grid,
                                  Eigen::VectorXd shift = {},
                                  Index dense_limit = kDefaultDenseLimit);

  NormKind natural_norm() const noexcept override { return NormKind::H1; }

  HilbertVector evaluate(const HilbertVector& u) const override;
  HilbertVector derivative_apply(const HilbertVector& u, const HilbertVector& psi) const override;
  HilbertVector random_direction(Rng& rng) const override;
  bool jacobian_symmetric_psd(const HilbertVector& at) const override;

  /// G v.
  Eigen::VectorXd kernel_apply(const Eigen::VectorXd& v) const;
  double kernel_entry(Index i, Index j) const;
  bool is_dense() const noexcept { return dense_.size() > 0; }
  bool has_shift() const noexcept { return has_shift_; }
  const Eigen::VectorXd& shift() const noexcept { return shift_; }

 private:
  Eigen::MatrixXd dense_;
  // g over |index offset| for the matrix-free path
  Eigen::VectorXd offset_table_;
  Eigen::VectorXd diagonal_;
  Eigen::VectorXd shift_;
  bool has_shift_ = false;
};

}  // namespace singreg
