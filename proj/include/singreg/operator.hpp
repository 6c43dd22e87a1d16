// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include <Eigen/Core>

#include "singreg/hilbert_vector.hpp"
#include "singreg/norms.hpp"
#include "singreg/sampling.hpp"

namespace singreg {

/// Suprema of the second and third Frechet derivatives over a ball.
struct DerivativeBounds {
  double m2 = 0.0;
  double m3 = 0.0;
  bool analytic = false;
};

/// Smooth nonlinear map F on a finite-dimensional Hilbert space together with
/// a certified root y (the base point, F(y) = 0).
///
/// Instances are immutable after construction and safe to share across
/// threads.
class OperatorModel {
 public:
  virtual ~OperatorModel() = default;

  Index dimension() const noexcept { return dimension_; }
  const HilbertVector& base_point() const noexcept { return base_point_; }
  const std::shared_ptr<const GridDomain>& grid() const noexcept { return grid_; }
  HilbertVector zero() const;

  /// Norm in which the operator's bounds are stated.
  virtual NormKind natural_norm() const noexcept { return NormKind::L2; }

  virtual HilbertVector evaluate(const HilbertVector& u) const = 0;
  /// F'(u) psi.
  virtual HilbertVector derivative_apply(const HilbertVector& u, const HilbertVector& psi) const = 0;

  /// Closed-form M2(R), M3(R) for the ball B(y, R), when known.
  virtual std::optional<DerivativeBounds> analytic_bounds(double /*radius*/) const {
    return std::nullopt;
  }

  /// Direction generator used by the sampling estimators. Gaussian by default.
  virtual HilbertVector random_direction(Rng& rng) const;

  /// Whether F'(at) is symmetric positive semidefinite in the Euclidean sense.
  /// The default materializes the Jacobian and checks.
  virtual bool jacobian_symmetric_psd(const HilbertVector& at) const;

  /// Dense F'(at), one derivative_apply per column.
  Eigen::MatrixXd materialize_jacobian(const HilbertVector& at) const;

  void require_in_space(const HilbertVector& u, const char* context) const;

 protected:
  OperatorModel(Index dimension, std::shared_ptr<const GridDomain> grid, HilbertVector base_point);

  /// Throws PreconditionError if norm(F(y)) > tolerance. Called by concrete
  /// constructors once evaluate() is usable.
  void certify_root(double tolerance = 1e-10) const;

 private:
  Index dimension_;
  std::shared_ptr<const GridDomain> grid_;
  HilbertVector base_point_;
};

/// K(z) = F(y + z) - F(y) - F'(y) z.
HilbertVector taylor_remainder(const OperatorModel& op, const HilbertVector& z);

struct BoundEstimateOptions {
  int samples = 64;
  std::uint64_t seed = 0x5eed;
  double safety = 1.25;
  /// Relative difference step (t = step * R).
  double step = 1e-4;
  /// When false, sampling runs even if the operator has analytic bounds.
  bool use_analytic = true;
  std::optional<NormKind> norm;
};

/// Empirical sup of F'' and F''' over B(y, R) along sampled unit directions.
///
/// The second derivative is taken as a central difference of derivative_apply
/// along the direction, the third as a second central difference; both use the
/// step t = options.step * R. Values below 1e-12 are clamped to zero.
DerivativeBounds estimate_derivative_bounds(const OperatorModel& op, double radius,
                                            const BoundEstimateOptions& options = {});

/// Operator defined by callables; useful for tests and ad-hoc models.
class CallableOperator final : public OperatorModel {
 public:
  using Map = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using Derivative = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
  using Bounds = std::function<DerivativeBounds(double)>;

  CallableOperator(HilbertVector base_point, Map evaluate, Derivative derivative,
                   Bounds analytic = nullptr, double root_tolerance = 1e-10);

  HilbertVector evaluate(const HilbertVector& u) const override;
  HilbertVector derivative_apply(const HilbertVector& u, const HilbertVector& psi) const override;
  std::optional<DerivativeBounds> analytic_bounds(double radius) const override;

 private:
  Map evaluate_;
  Derivative derivative_;
  Bounds analytic_;
};

}  // namespace singreg
