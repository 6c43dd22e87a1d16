// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "singreg/hilbert_vector.hpp"
#include "singreg/norms.hpp"
#include "singreg/operator.hpp"

namespace singreg {

/// Quantities controlling the fixed-point map
///   T(z) = -A_eps^{-1} K(z) - eps A_eps^{-1} (y - w),   A_eps = A + eps I,
/// under |A_eps^{-1}| <= c / eps and y - w = A v.
struct TheoremConstants {
  double c = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double v_norm = 0.0;
  double epsilon = 0.0;
  /// sqrt(1 - 2 M2 |v| c (1 + c)), in (0, 1].
  double rho = 0.0;
  /// T maps B(0, R) into itself for R in [r_min, r_max].
  double r_min = 0.0;
  double r_max = 0.0;
  /// Lipschitz bound of T on B(0, r_min).
  double q = 0.0;
  /// Supremum of eps with q < 1; +inf when M3 = 0 or rho = 1.
  double epsilon0 = 0.0;
};

/// Throws AdmissibilityError when 2 M2 v_norm c (1 + c) >= 1.
TheoremConstants compute_theorem_constants(double c, double m2, double m3, double v_norm,
                                           double epsilon);

/// Largest |v| admitted for the given c and M2.
double admissible_v_bound(double c, double m2);

struct WBoundCheck {
  double c = 1.0;
  double m2 = 0.0;
};

/// w = y - F'(y) v. Logs a warning (and still returns w) when |v| is outside
/// the admissible bound.
HilbertVector choose_w(const OperatorModel& op, const HilbertVector& v,
                       std::optional<WBoundCheck> bound_check = std::nullopt,
                       std::optional<NormKind> norm_kind = std::nullopt);

}  // namespace singreg
