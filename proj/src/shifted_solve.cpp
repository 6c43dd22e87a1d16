// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/shifted_solve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "singreg/errors.hpp"

namespace singreg {

ShiftedSolver::ShiftedSolver(const OperatorModel& op, double epsilon, const HilbertVector& at,
                             ShiftedSolveOptions options)
    : op_(&op), epsilon_(epsilon), at_(at), options_(options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("ShiftedSolver: eps must be > 0");
  op.require_in_space(at, "ShiftedSolver");
  if (op.jacobian_symmetric_psd(at)) {
    path_ = ShiftedSolvePath::ConjugateGradient;
    return;
  }
  if (op.dimension() > options_.dense_limit) {
    throw LinearSolveError("ShiftedSolver: non-symmetric Jacobian of dimension " +
                               std::to_string(op.dimension()) + " exceeds the dense limit",
                           std::nan(""));
  }
  path_ = ShiftedSolvePath::DenseLU;
  shifted_ = op.materialize_jacobian(at);
  shifted_.diagonal().array() += epsilon;
  lu_.compute(shifted_);
}

Eigen::VectorXd ShiftedSolver::apply(const Eigen::VectorXd& x) const {
  return op_->derivative_apply(at_, at_.with_coeffs(x)).coeffs() + epsilon_ * x;
}

Eigen::VectorXd ShiftedSolver::conjugate_gradient(const Eigen::VectorXd& b,
                                                  const Eigen::VectorXd& x0) const {
  const Index n = b.size();
  const int max_it = options_.max_iterations > 0 ? options_.max_iterations
                                                 : static_cast<int>(10 * n + 50);
  const double target = options_.tolerance * b.norm();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = b - apply(x);
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  for (int it = 0; it < max_it && std::sqrt(rr) > target; ++it) {
    const Eigen::VectorXd ap = apply(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return x;
}

HilbertVector ShiftedSolver::solve(const HilbertVector& b) const {
  op_->require_in_space(b, "shifted_solve");
  const Eigen::VectorXd& rhs = b.coeffs();
  const double b_norm = rhs.norm();
  if (b_norm == 0.0) return HilbertVector::zeros_like(b);

  Eigen::VectorXd x;
  double rel = 0.0;
  if (path_ == ShiftedSolvePath::ConjugateGradient) {
    x = Eigen::VectorXd::Zero(rhs.size());
    // Restarts recover from drift between the recursive and true residual.
    for (int restart = 0; restart < 3; ++restart) {
      x = conjugate_gradient(rhs, x);
      rel = (apply(x) - rhs).norm() / b_norm;
      if (rel <= options_.tolerance) break;
    }
  } else {
    x = lu_.solve(rhs);
    rel = (shifted_ * x - rhs).norm() / b_norm;
    if (rel > options_.tolerance) {
      x += lu_.solve(rhs - shifted_ * x);
      rel = (shifted_ * x - rhs).norm() / b_norm;
    }
  }
  if (!(rel <= options_.tolerance)) {
    throw LinearSolveError("shifted_solve: relative residual " + std::to_string(rel) +
                               " above tolerance " + std::to_string(options_.tolerance),
                           rel);
  }
  return b.with_coeffs(std::move(x));
}

HilbertVector shifted_solve(const OperatorModel& op, double epsilon, const HilbertVector& b,
                            const HilbertVector& at, ShiftedSolveOptions options) {
  return ShiftedSolver(op, epsilon, at, options).solve(b);
}

}  // namespace singreg
