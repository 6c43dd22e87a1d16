// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "singreg/hilbert_vector.hpp"

namespace singreg {

enum class NormKind { L2, H1, L4, L6 };

std::string_view to_string(NormKind kind) noexcept;
/// Parses "L2", "H1", "L4", "L6" (case-insensitive); throws std::invalid_argument.
NormKind parse_norm_kind(std::string_view text);

/// L2 uses trapezoidal weights on grid vectors and the Euclidean product on
/// abstract vectors. H1 adds the L2 form of forward-difference gradients and
/// needs a grid tag.
double inner_product(const HilbertVector& u, const HilbertVector& v, NormKind kind);

/// Lp norms are the p-th root of the weighted sum of |u|^p (unit weights on
/// abstract vectors).
double norm(const HilbertVector& u, NormKind kind);

/// Forward difference along `axis`; the last node along the axis reuses the
/// backward difference.
Eigen::VectorXd forward_gradient(const GridDomain& grid, const Eigen::VectorXd& u, int axis);

}  // namespace singreg
