// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/operators.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "singreg/errors.hpp"

namespace singreg {

namespace {

double spectral_norm_symmetric(const Eigen::MatrixXd& s) {
  if (s.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

MatrixQuadraticOperator::MatrixQuadraticOperator(Eigen::MatrixXd linear,
                                                 std::vector<Eigen::MatrixXd> quadratic,
                                                 std::optional<double> analytic_m2)
    : OperatorModel(linear.rows(), nullptr, HilbertVector::zeros(linear.rows())),
      linear_(std::move(linear)),
      quadratic_(std::move(quadratic)) {
  const Index n = linear_.rows();
  if (linear_.cols() != n) throw ShapeError("MatrixQuadraticOperator: linear part must be square");
  if (!linear_.allFinite()) throw NonFiniteError("MatrixQuadraticOperator: non-finite entry");
  if (quadratic_.empty()) {
    quadratic_.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  }
  if (static_cast<Index>(quadratic_.size()) != n) {
    throw ShapeError("MatrixQuadraticOperator: need one quadratic matrix per component");
  }
  double sum_sq = 0.0;
  for (const auto& q : quadratic_) {
    if (q.rows() != n || q.cols() != n) {
      throw ShapeError("MatrixQuadraticOperator: quadratic matrices must be " +
                       std::to_string(n) + "x" + std::to_string(n));
    }
    if (!q.allFinite()) throw NonFiniteError("MatrixQuadraticOperator: non-finite entry");
    symmetrized_.push_back(q + q.transpose());
    const double s = spectral_norm_symmetric(symmetrized_.back());
    sum_sq += s * s;
  }
  m2_ = analytic_m2.value_or(std::sqrt(sum_sq));

  const double scale = std::max(1.0, linear_.cwiseAbs().maxCoeff());
  linear_psd_ = (linear_ - linear_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  if (linear_psd_ && n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(linear_, Eigen::EigenvaluesOnly);
    linear_psd_ = eig.eigenvalues().minCoeff() >= -1e-12 * scale;
  }
  certify_root();
}

MatrixQuadraticOperator MatrixQuadraticOperator::linear(Eigen::MatrixXd matrix) {
  return MatrixQuadraticOperator(std::move(matrix), {}, 0.0);
}

MatrixQuadraticOperator MatrixQuadraticOperator::planar_test_family() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 1) = 1.0;
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(2, 2);
  q1(1, 1) = 0.5;
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(2, 2);
  q2(0, 1) = 0.5;
  q2(1, 0) = 0.5;
  return MatrixQuadraticOperator(std::move(a), {q1, q2});
}

HilbertVector MatrixQuadraticOperator::evaluate(const HilbertVector& u) const {
  require_in_space(u, "MatrixQuadraticOperator::evaluate");
  const Eigen::VectorXd& x = u.coeffs();
  Eigen::VectorXd out = linear_ * x;
  for (Index i = 0; i < out.size(); ++i) out[i] += x.dot(quadratic_[i] * x);
  return u.with_coeffs(std::move(out));
}

HilbertVector MatrixQuadraticOperator::derivative_apply(const HilbertVector& u,
                                                        const HilbertVector& psi) const {
  require_in_space(u, "MatrixQuadraticOperator::derivative_apply");
  require_in_space(psi, "MatrixQuadraticOperator::derivative_apply");
  const Eigen::VectorXd& x = u.coeffs();
  const Eigen::VectorXd& d = psi.coeffs();
  Eigen::VectorXd out = linear_ * d;
  for (Index i = 0; i < out.size(); ++i) out[i] += x.dot(symmetrized_[i] * d);
  return u.with_coeffs(std::move(out));
}

std::optional<DerivativeBounds> MatrixQuadraticOperator::analytic_bounds(double) const {
  return DerivativeBounds{m2_, 0.0, true};
}

bool MatrixQuadraticOperator::jacobian_symmetric_psd(const HilbertVector& at) const {
  if (at.is_zero()) return linear_psd_;
  return OperatorModel::jacobian_symmetric_psd(at);
}

ScalarCubicOperator::ScalarCubicOperator() : OperatorModel(1, nullptr, HilbertVector::zeros(1)) {
  certify_root();
}

HilbertVector ScalarCubicOperator::evaluate(const HilbertVector& u) const {
  require_in_space(u, "ScalarCubicOperator::evaluate");
  const double x = u[0];
  return u.with_coeffs(Eigen::VectorXd::Constant(1, x * x * x));
}

HilbertVector ScalarCubicOperator::derivative_apply(const HilbertVector& u,
                                                    const HilbertVector& psi) const {
  require_in_space(u, "ScalarCubicOperator::derivative_apply");
  require_in_space(psi, "ScalarCubicOperator::derivative_apply");
  return u.with_coeffs(Eigen::VectorXd::Constant(1, 3.0 * u[0] * u[0] * psi[0]));
}

std::optional<DerivativeBounds> ScalarCubicOperator::analytic_bounds(double radius) const {
  return DerivativeBounds{6.0 * radius, 6.0, true};
}

bool ScalarCubicOperator::jacobian_symmetric_psd(const HilbertVector&) const { return true; }

}  // namespace singreg
