// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/newtonian.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "singreg/errors.hpp"

namespace singreg {

double newtonian_kernel(const Point3& x, const Point3& s) noexcept {
  const double dx = x[0] - s[0];
  const double dy = x[1] - s[1];
  const double dz = x[2] - s[2];
  return 1.0 / (4.0 * std::numbers::pi * std::sqrt(dx * dx + dy * dy + dz * dz));
}

double newtonian_self_cell(double volume) noexcept {
  const double a = std::cbrt(3.0 * volume / (4.0 * std::numbers::pi));
  return 0.5 * a * a;
}

NewtonianCubicOperator::NewtonianCubicOperator(GridDomain grid, Eigen::VectorXd shift,
                                               Index dense_limit)
    : NewtonianCubicOperator(std::make_shared<const GridDomain>(std::move(grid)),
                             std::move(shift), dense_limit) {}

NewtonianCubicOperator::NewtonianCubicOperator(std::shared_ptr<const GridDomain> grid,
                                               Eigen::VectorXd shift, Index dense_limit)
    : OperatorModel(grid->size(), grid, HilbertVector::zeros(grid)) {
  const GridDomain& g = *this->grid();
  const Index n = g.size();
  const Eigen::VectorXd& w = g.weights();

  diagonal_.resize(n);
  for (Index i = 0; i < n; ++i) diagonal_[i] = newtonian_self_cell(w[i]);

  if (n <= dense_limit) {
    dense_.resize(n, n);
    for (Index j = 0; j < n; ++j) {
      const Point3 s = g.node(j);
      for (Index i = 0; i < n; ++i) {
        dense_(i, j) = (i == j) ? diagonal_[i] : w[j] * newtonian_kernel(g.node(i), s);
      }
    }
  } else {
    const auto& p = g.points();
    const auto& h = g.spacing();
    offset_table_.resize(n);
    for (int k = 0; k < p[2]; ++k)
      for (int j = 0; j < p[1]; ++j)
        for (int i = 0; i < p[0]; ++i) {
          const double r = std::sqrt((i * h[0]) * (i * h[0]) + (j * h[1]) * (j * h[1]) +
                                     (k * h[2]) * (k * h[2]));
          offset_table_[g.index(i, j, k)] =
              (i == 0 && j == 0 && k == 0) ? 0.0 : 1.0 / (4.0 * std::numbers::pi * r);
        }
  }

  if (shift.size() > 0) {
    if (shift.size() != n) throw ShapeError("NewtonianCubicOperator: shift has wrong size");
    if (!shift.allFinite()) throw NonFiniteError("NewtonianCubicOperator: non-finite shift");
    shift_ = std::move(shift);
    has_shift_ = !shift_.isZero(0.0);
  } else {
    shift_ = Eigen::VectorXd::Zero(n);
  }
  // y = 0 is an exact root when f = 0; nothing to certify numerically.
}

double NewtonianCubicOperator::kernel_entry(Index i, Index j) const {
  if (is_dense()) return dense_(i, j);
  if (i == j) return diagonal_[i];
  const GridDomain& g = *grid();
  const auto a = g.multi_index(i);
  const auto b = g.multi_index(j);
  return g.weights()[j] *
         offset_table_[g.index(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2]))];
}

Eigen::VectorXd NewtonianCubicOperator::kernel_apply(const Eigen::VectorXd& v) const {
  if (v.size() != dimension()) throw ShapeError("NewtonianCubicOperator: kernel_apply size mismatch");
  if (is_dense()) return dense_ * v;

  const GridDomain& g = *grid();
  const auto& p = g.points();
  const Eigen::VectorXd wv = g.weights().cwiseProduct(v);
  Eigen::VectorXd out(v.size());
  for (int k = 0; k < p[2]; ++k)
    for (int j = 0; j < p[1]; ++j)
      for (int i = 0; i < p[0]; ++i) {
        const Index row = g.index(i, j, k);
        double acc = 0.0;
        for (int kk = 0; kk < p[2]; ++kk)
          for (int jj = 0; jj < p[1]; ++jj) {
            const Index base = g.index(0, jj, kk);
            const Index obase = g.index(0, std::abs(j - jj), std::abs(k - kk));
            for (int ii = 0; ii < p[0]; ++ii) {
              acc += offset_table_[obase + std::abs(i - ii)] * wv[base + ii];
            }
          }
        out[row] = acc + diagonal_[row] * v[row];
      }
  return out;
}

HilbertVector NewtonianCubicOperator::evaluate(const HilbertVector& u) const {
  require_in_space(u, "NewtonianCubicOperator::evaluate");
  const Eigen::VectorXd cube = u.coeffs().array().cube().matrix();
  return u.with_coeffs(kernel_apply(cube) - shift_);
}

HilbertVector NewtonianCubicOperator::derivative_apply(const HilbertVector& u,
                                                       const HilbertVector& psi) const {
  require_in_space(u, "NewtonianCubicOperator::derivative_apply");
  require_in_space(psi, "NewtonianCubicOperator::derivative_apply");
  const Eigen::VectorXd weighted =
      (3.0 * u.coeffs().array().square() * psi.coeffs().array()).matrix();
  return u.with_coeffs(kernel_apply(weighted));
}

HilbertVector NewtonianCubicOperator::random_direction(Rng& rng) const {
  return random_smooth_field(grid(), rng);
}

bool NewtonianCubicOperator::jacobian_symmetric_psd(const HilbertVector& at) const {
  // F'(0) = 0; elsewhere G diag(3u^2) is not symmetric in general.
  return at.is_zero();
}

}  // namespace singreg
