// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "singreg/errors.hpp"

namespace singreg {

std::string_view to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::L2: return "L2";
    case NormKind::H1: return "H1";
    case NormKind::L4: return "L4";
    case NormKind::L6: return "L6";
  }
  return "?";
}

NormKind parse_norm_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (upper == "L2") return NormKind::L2;
  if (upper == "H1") return NormKind::H1;
  if (upper == "L4") return NormKind::L4;
  if (upper == "L6") return NormKind::L6;
  throw std::invalid_argument("unknown norm kind '" + std::string(text) + "'");
}

Eigen::VectorXd forward_gradient(const GridDomain& grid, const Eigen::VectorXd& u, int axis) {
  const auto& n = grid.points();
  const double h = grid.spacing()[axis];
  Eigen::VectorXd d(u.size());
  for (int k = 0; k < n[2]; ++k) {
    for (int j = 0; j < n[1]; ++j) {
      for (int i = 0; i < n[0]; ++i) {
        std::array<int, 3> at{i, j, k};
        std::array<int, 3> lo = at;
        std::array<int, 3> hi = at;
        if (at[axis] + 1 < n[axis]) {
          hi[axis] += 1;
        } else {
          lo[axis] -= 1;
        }
        d[grid.index(i, j, k)] =
            (u[grid.index(hi[0], hi[1], hi[2])] - u[grid.index(lo[0], lo[1], lo[2])]) / h;
      }
    }
  }
  return d;
}

namespace {

double weighted_dot(const HilbertVector& u, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (!u.is_grid()) return a.dot(b);
  return (u.grid()->weights().array() * a.array() * b.array()).sum();
}

double lp_norm(const HilbertVector& u, int p) {
  const Eigen::ArrayXd powered = u.coeffs().array().abs().pow(p);
  const double sum = u.is_grid() ? (u.grid()->weights().array() * powered).sum() : powered.sum();
  return std::pow(sum, 1.0 / p);
}

}  // namespace

double inner_product(const HilbertVector& u, const HilbertVector& v, NormKind kind) {
  u.require_same_space(v, "inner_product");
  switch (kind) {
    case NormKind::L2:
      return weighted_dot(u, u.coeffs(), v.coeffs());
    case NormKind::H1: {
      if (!u.is_grid()) throw ShapeError("inner_product: H1 needs a grid-tagged vector");
      double total = weighted_dot(u, u.coeffs(), v.coeffs());
      for (int axis = 0; axis < 3; ++axis) {
        total += weighted_dot(u, forward_gradient(*u.grid(), u.coeffs(), axis),
                              forward_gradient(*v.grid(), v.coeffs(), axis));
      }
      return total;
    }
    case NormKind::L4:
    case NormKind::L6:
      break;
  }
  throw std::invalid_argument("inner_product: only L2 and H1 define an inner product");
}

double norm(const HilbertVector& u, NormKind kind) {
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(std::max(0.0, inner_product(u, u, NormKind::L2)));
    case NormKind::H1:
      return std::sqrt(std::max(0.0, inner_product(u, u, NormKind::H1)));
    case NormKind::L4:
      return lp_norm(u, 4);
    case NormKind::L6:
      return lp_norm(u, 6);
  }
  return 0.0;
}

}  // namespace singreg
