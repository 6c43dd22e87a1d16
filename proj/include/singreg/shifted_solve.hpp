// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/LU>

#include "singreg/operator.hpp"

namespace singreg {

struct ShiftedSolveOptions {
  /// Required relative residual |(A + eps I) x - b| / |b| (Euclidean).
  double tolerance = 1e-12;
  /// Conjugate-gradient iteration cap; 0 means 10 N + 50.
  int max_iterations = 0;
  /// Largest dimension for which the dense path may materialize A.
  Index dense_limit = 2000;
};

enum class ShiftedSolvePath { ConjugateGradient, DenseLU };

/// Solves (F'(at) + eps I) x = b repeatedly for a fixed linearization point.
///
/// Symmetric positive semidefinite Jacobians are handled matrix-free by
/// conjugate gradients; anything else is materialized and LU-factored once.
class ShiftedSolver {
 public:
  ShiftedSolver(const OperatorModel& op, double epsilon, const HilbertVector& at,
                ShiftedSolveOptions options = {});

  /// Throws LinearSolveError when the residual target is missed.
  HilbertVector solve(const HilbertVector& b) const;

  ShiftedSolvePath path() const noexcept { return path_; }
  double epsilon() const noexcept { return epsilon_; }

 private:
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd conjugate_gradient(const Eigen::VectorXd& b, const Eigen::VectorXd& x0) const;

  const OperatorModel* op_;
  double epsilon_;
  HilbertVector at_;
  ShiftedSolveOptions options_;
  ShiftedSolvePath path_;
  Eigen::MatrixXd shifted_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

HilbertVector shifted_solve(const OperatorModel& op, double epsilon, const HilbertVector& b,
                            const HilbertVector& at, ShiftedSolveOptions options = {});

}  // namespace singreg
