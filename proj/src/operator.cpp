// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "singreg/errors.hpp"

namespace singreg {

OperatorModel::OperatorModel(Index dimension, std::shared_ptr<const GridDomain> grid,
                             HilbertVector base_point)
    : dimension_(dimension), grid_(std::move(grid)), base_point_(std::move(base_point)) {
  const bool grids_match = grid_ ? (base_point_.grid() && *grid_ == *base_point_.grid())
                                  : !base_point_.is_grid();
  if (base_point_.size() != dimension_ || !grids_match) {
    throw ShapeError("OperatorModel: base point is not in the operator's space");
  }
}

HilbertVector OperatorModel::zero() const {
  if (grid_) return HilbertVector::zeros(grid_);
  return HilbertVector::zeros(dimension_);
}

void OperatorModel::require_in_space(const HilbertVector& u, const char* context) const {
  base_point_.require_same_space(u, context);
}

void OperatorModel::certify_root(double tolerance) const {
  const double r = norm(evaluate(base_point_), natural_norm());
  if (r > tolerance) {
    throw PreconditionError("OperatorModel: base point is not a root, |F(y)| = " +
                            std::to_string(r) + " > " + std::to_string(tolerance));
  }
}

HilbertVector OperatorModel::random_direction(Rng& rng) const {
  return random_gaussian(base_point_, rng);
}

Eigen::MatrixXd OperatorModel::materialize_jacobian(const HilbertVector& at) const {
  require_in_space(at, "materialize_jacobian");
  Eigen::MatrixXd jac(dimension_, dimension_);
  for (Index j = 0; j < dimension_; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dimension_);
    e[j] = 1.0;
    jac.col(j) = derivative_apply(at, at.with_coeffs(std::move(e))).coeffs();
  }
  return jac;
}

bool OperatorModel::jacobian_symmetric_psd(const HilbertVector& at) const {
  const Eigen::MatrixXd jac = materialize_jacobian(at);
  const double scale = std::max(1.0, jac.cwiseAbs().maxCoeff());
  if ((jac - jac.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (jac + jac.transpose()),
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -1e-12 * scale;
}

HilbertVector taylor_remainder(const OperatorModel& op, const HilbertVector& z) {
  op.require_in_space(z, "taylor_remainder");
  const HilbertVector& y = op.base_point();
  return op.evaluate(y + z) - op.evaluate(y) - op.derivative_apply(y, z);
}

DerivativeBounds estimate_derivative_bounds(const OperatorModel& op, double radius,
                                            const BoundEstimateOptions& options) {
  if (!(radius > 0.0)) throw std::invalid_argument("estimate_derivative_bounds: R must be > 0");
  if (options.samples < 1) throw std::invalid_argument("estimate_derivative_bounds: samples < 1");
  if (options.use_analytic) {
    if (auto analytic = op.analytic_bounds(radius)) return *analytic;
  }
  const NormKind kind = options.norm.value_or(op.natural_norm());
  const HilbertVector& y = op.base_point();
  const double t = options.step * radius;
  Rng rng(options.seed);

  double m2 = 0.0;
  double m3 = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const HilbertVector offset = scaled_to_norm(op.random_direction(rng), 1.0, kind);
    const HilbertVector u = y + random_ball_radius(radius, op.dimension(), rng) * offset;
    const HilbertVector d = scaled_to_norm(op.random_direction(rng), 1.0, kind);

    const HilbertVector jp = op.derivative_apply(u + t * d, d);
    const HilbertVector j0 = op.derivative_apply(u, d);
    const HilbertVector jm = op.derivative_apply(u - t * d, d);
    m2 = std::max(m2, norm((1.0 / (2.0 * t)) * (jp - jm), kind));
    m3 = std::max(m3, norm((1.0 / (t * t)) * (jp - 2.0 * j0 + jm), kind));
  }
  DerivativeBounds out;
  out.m2 = m2 < 1e-12 ? 0.0 : options.safety * m2;
  out.m3 = m3 < 1e-12 ? 0.0 : options.safety * m3;
  return out;
}

CallableOperator::CallableOperator(HilbertVector base_point, Map evaluate, Derivative derivative,
                                   Bounds analytic, double root_tolerance)
    : OperatorModel(base_point.size(), base_point.grid_ptr(), base_point),
      evaluate_(std::move(evaluate)),
      derivative_(std::move(derivative)),
      analytic_(std::move(analytic)) {
  certify_root(root_tolerance);
}

HilbertVector CallableOperator::evaluate(const HilbertVector& u) const {
  require_in_space(u, "CallableOperator::evaluate");
  return u.with_coeffs(evaluate_(u.coeffs()));
}

HilbertVector CallableOperator::derivative_apply(const HilbertVector& u,
                                                 const HilbertVector& psi) const {
  require_in_space(u, "CallableOperator::derivative_apply");
  require_in_space(psi, "CallableOperator::derivative_apply");
  return u.with_coeffs(derivative_(u.coeffs(), psi.coeffs()));
}

std::optional<DerivativeBounds> CallableOperator::analytic_bounds(double radius) const {
  if (!analytic_) return std::nullopt;
  DerivativeBounds b = analytic_(radius);
  b.analytic = true;
  return b;
}

}  // namespace singreg
