// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>
#include <variant>

#include "singreg/grid.hpp"
#include "singreg/hilbert_vector.hpp"
#include "singreg/norms.hpp"
#include "singreg/operator.hpp"

// Reference solvers used to check the main solver. Nothing here calls into
// the shifted solver, the Picard loop or the Newtonian kernel matrix.
namespace singreg::oracle {

enum class Method { Bisection, Newton, RefinedQuadrature };

std::string_view to_string(Method method) noexcept;

struct OracleResult {
  std::variant<double, HilbertVector> value;
  /// Bisection: final bracket width. Newton: final residual norm.
  /// Quadrature: Richardson error estimate.
  double certified_error = 0.0;
  Method method = Method::Bisection;
  /// False when Newton stalled or diverged.
  bool certified = true;
  int iterations = 0;

  double scalar() const { return std::get<double>(value); }
  const HilbertVector& vector() const { return std::get<HilbertVector>(value); }
};

/// Bisection on [lo, hi]; throws BracketError without a sign change.
OracleResult scalar_bisection(const std::function<double(double)>& f, double lo, double hi,
                              double tol);

struct NewtonOptions {
  int max_iterations = 100;
  int max_halvings = 60;
  Index dimension_limit = 1000;
  NormKind norm = NormKind::L2;
};

/// Damped Newton on G(u) = F(u) + eps (u - w) with dense Jacobians and its own
/// Gaussian elimination. Throws SingularJacobianError on a zero pivot.
OracleResult dense_newton(const OperatorModel& op, double epsilon, const HilbertVector& w,
                          const HilbertVector& start, double tol,
                          const NewtonOptions& options = {});

/// Newtonian potential of `density` at `x`, integrated by the midpoint rule on
/// the domain's cells subdivided `refinement` times per axis, with a
/// Richardson estimate against the rule at refinement / 2.
/// Throws std::length_error when the fine level exceeds 64 cells per axis.
OracleResult refined_quadrature(const GridDomain& domain,
                                const std::function<double(const Point3&)>& density,
                                const Point3& x, int refinement);

}  // namespace singreg::oracle
