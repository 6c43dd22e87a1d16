// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/theorem_constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "singreg/errors.hpp"
#include "singreg/log.hpp"

namespace singreg {

TheoremConstants compute_theorem_constants(double c, double m2, double m3, double v_norm,
                                           double epsilon) {
  if (!(c >= 0.0) || !(m3 >= 0.0) || !(v_norm >= 0.0)) {
    throw std::invalid_argument("compute_theorem_constants: c, M3, |v| must be >= 0");
  }
  if (!(m2 > 0.0)) throw std::invalid_argument("compute_theorem_constants: M2 must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("compute_theorem_constants: eps must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("compute_theorem_constants: c must be > 0");

  const double product = 2.0 * m2 * v_norm * c * (1.0 + c);
  if (product >= 1.0) {
    throw AdmissibilityError("admissibility violated: 2*M2*|v|*c*(1+c) = " +
                                 std::to_string(product) + " >= 1",
                             product);
  }

  TheoremConstants k;
  k.c = c;
  k.m2 = m2;
  k.m3 = m3;
  k.v_norm = v_norm;
  k.epsilon = epsilon;
  k.rho = std::sqrt(1.0 - product);
  k.r_min = epsilon * (1.0 - k.rho) / (c * m2);
  k.r_max = epsilon * (1.0 + k.rho) / (c * m2);
  k.q = (c / epsilon) * (m3 * k.r_min * k.r_min / 6.0 + m2 * k.r_min);

  // q(eps) = (1 - rho) + eps * M3 (1 - rho)^2 / (6 c M2^2)
  const double one_minus_rho = 1.0 - k.rho;
  if (m3 == 0.0 || one_minus_rho == 0.0) {
    k.epsilon0 = std::numeric_limits<double>::infinity();
  } else {
    k.epsilon0 = k.rho * 6.0 * c * m2 * m2 / (m3 * one_minus_rho * one_minus_rho);
  }
  return k;
}

double admissible_v_bound(double c, double m2) { return 1.0 / (2.0 * m2 * c * (1.0 + c)); }

HilbertVector choose_w(const OperatorModel& op, const HilbertVector& v,
                       std::optional<WBoundCheck> bound_check, std::optional<NormKind> norm_kind) {
  op.require_in_space(v, "choose_w");
  if (bound_check && bound_check->m2 > 0.0) {
    const double v_norm = norm(v, norm_kind.value_or(op.natural_norm()));
    const double bound = admissible_v_bound(bound_check->c, bound_check->m2);
    if (!(v_norm < bound)) {
      log::warn("choose_w: |v| = {} is not below the admissible bound {}", v_norm, bound);
    }
  }
  const HilbertVector& y = op.base_point();
  return y - op.derivative_apply(y, v);
}

}  // namespace singreg
