// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/hilbert_vector.hpp"

#include <string>

#include "singreg/errors.hpp"

namespace singreg {

HilbertVector::HilbertVector(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  check_finite();
}

HilbertVector::HilbertVector(std::shared_ptr<const GridDomain> grid, Eigen::VectorXd coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (grid_ && grid_->size() != coeffs_.size()) {
    throw ShapeError("HilbertVector: grid has " + std::to_string(grid_->size()) +
                     " nodes but " + std::to_string(coeffs_.size()) + " coefficients given");
  }
  check_finite();
}

HilbertVector HilbertVector::zeros(Index n) { return HilbertVector(Eigen::VectorXd::Zero(n)); }

HilbertVector HilbertVector::zeros(std::shared_ptr<const GridDomain> grid) {
  const Index n = grid->size();
  return HilbertVector(std::move(grid), Eigen::VectorXd::Zero(n));
}

HilbertVector HilbertVector::zeros_like(const HilbertVector& other) {
  return other.with_coeffs(Eigen::VectorXd::Zero(other.size()));
}

HilbertVector HilbertVector::with_coeffs(Eigen::VectorXd coeffs) const {
  return HilbertVector(grid_, std::move(coeffs));
}

bool HilbertVector::same_space(const HilbertVector& other) const noexcept {
  if (coeffs_.size() != other.coeffs_.size()) return false;
  if (grid_ == other.grid_) return true;
  if (!grid_ || !other.grid_) return false;
  return *grid_ == *other.grid_;
}

void HilbertVector::require_same_space(const HilbertVector& other, const char* context) const {
  if (!same_space(other)) {
    throw ShapeError(std::string(context) + ": operands differ in dimension (" +
                     std::to_string(size()) + " vs " + std::to_string(other.size()) +
                     ") or space tag");
  }
}

HilbertVector& HilbertVector::operator+=(const HilbertVector& rhs) {
  require_same_space(rhs, "HilbertVector +");
  coeffs_ += rhs.coeffs_;
  check_finite();
  return *this;
}

HilbertVector& HilbertVector::operator-=(const HilbertVector& rhs) {
  require_same_space(rhs, "HilbertVector -");
  coeffs_ -= rhs.coeffs_;
  check_finite();
  return *this;
}

HilbertVector& HilbertVector::operator*=(double alpha) {
  coeffs_ *= alpha;
  check_finite();
  return *this;
}

void HilbertVector::check_finite() const {
  if (!coeffs_.allFinite()) throw NonFiniteError("HilbertVector: non-finite coefficient");
}

}  // namespace singreg
