// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include <Eigen/Core>

#include "singreg/grid.hpp"

namespace singreg {

/// Element of a finite-dimensional real Hilbert space.
///
/// A vector is either abstract (plain R^N with the Euclidean structure) or
/// tagged with the grid it was sampled on. Arithmetic requires both operands
/// to live in the same space; entries are always finite.
class HilbertVector {
 public:
  HilbertVector() = default;
  explicit HilbertVector(Eigen::VectorXd coeffs);
  HilbertVector(std::shared_ptr<const GridDomain> grid, Eigen::VectorXd coeffs);

  static HilbertVector zeros(Index n);
  static HilbertVector zeros(std::shared_ptr<const GridDomain> grid);
  static HilbertVector zeros_like(const HilbertVector& other);

  /// New vector in the same space as *this with the given coefficients.
  HilbertVector with_coeffs(Eigen::VectorXd coeffs) const;

  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  double operator[](Index i) const { return coeffs_[i]; }
  Index size() const noexcept { return coeffs_.size(); }

  bool is_grid() const noexcept { return grid_ != nullptr; }
  const GridDomain* grid() const noexcept { return grid_.get(); }
  const std::shared_ptr<const GridDomain>& grid_ptr() const noexcept { return grid_; }

  bool same_space(const HilbertVector& other) const noexcept;
  /// Throws ShapeError unless same_space(other).
  void require_same_space(const HilbertVector& other, const char* context) const;

  bool is_zero() const noexcept { return coeffs_.isZero(0.0); }

  HilbertVector& operator+=(const HilbertVector& rhs);
  HilbertVector& operator-=(const HilbertVector& rhs);
  HilbertVector& operator*=(double alpha);

  friend HilbertVector operator+(HilbertVector lhs, const HilbertVector& rhs) { return lhs += rhs; }
  friend HilbertVector operator-(HilbertVector lhs, const HilbertVector& rhs) { return lhs -= rhs; }
  friend HilbertVector operator*(double alpha, HilbertVector v) { return v *= alpha; }
  friend HilbertVector operator*(HilbertVector v, double alpha) { return v *= alpha; }
  friend HilbertVector operator-(HilbertVector v) { return v *= -1.0; }

 private:
  void check_finite() const;

  std::shared_ptr<const GridDomain> grid_;
  Eigen::VectorXd coeffs_;
};

}  // namespace singreg
