// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "singreg/operator.hpp"

namespace singreg {

/// F(u) = A u + q(u) on R^N with q_i(u) = u^T Q_i u and base point y = 0.
///
/// F'' is the constant bilinear map (a, b) -> (a^T S_i b)_i with
/// S_i = Q_i + Q_i^T, so M3 = 0 and M2 is bounded by sqrt(sum_i |S_i|_2^2)
/// unless the caller supplies a tighter value.
class MatrixQuadraticOperator final : public OperatorModel {
 public:
  MatrixQuadraticOperator(Eigen::MatrixXd linear, std::vector<Eigen::MatrixXd> quadratic,
                          std::optional<double> analytic_m2 = std::nullopt);

  /// Purely linear map F(u) = A u.
  static MatrixQuadraticOperator linear(Eigen::MatrixXd matrix);
  /// The two-dimensional family F(u) = (u2^2 / 2, u2 + u1 u2); A = diag(0, 1).
  static MatrixQuadraticOperator planar_test_family();

  HilbertVector evaluate(const HilbertVector& u) const override;
  HilbertVector derivative_apply(const HilbertVector& u, const HilbertVector& psi) const override;
  std::optional<DerivativeBounds> analytic_bounds(double radius) const override;
  bool jacobian_symmetric_psd(const HilbertVector& at) const override;

  const Eigen::MatrixXd& linear_part() const noexcept { return linear_; }
  const std::vector<Eigen::MatrixXd>& quadratic_part() const noexcept { return quadratic_; }

 private:
  Eigen::MatrixXd linear_;
  std::vector<Eigen::MatrixXd> quadratic_;
  std::vector<Eigen::MatrixXd> symmetrized_;
  double m2_;
  bool linear_psd_;
};

/// Scalar F(u) = u^3 with y = 0; M2(R) = 6R, M3 = 6.
class ScalarCubicOperator final : public OperatorModel {
 public:
  ScalarCubicOperator();

  HilbertVector evaluate(const HilbertVector& u) const override;
  HilbertVector derivative_apply(const HilbertVector& u, const HilbertVector& psi) const override;
  std::optional<DerivativeBounds> analytic_bounds(double radius) const override;
  bool jacobian_symmetric_psd(const HilbertVector& at) const override;
};

}  // namespace singreg
