// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "singreg/operator.hpp"

namespace singreg {

struct ResolventOptions {
  int max_iterations = 20000;
  /// Relative change of the Rayleigh quotient that ends power iteration.
  double tolerance = 1e-14;
  Index dense_limit = 2000;
  std::uint64_t seed = 0x7e501;
};

struct ResolventEstimate {
  /// max over the grid of eps |(A + eps I)^{-1}|; a lower bound for c.
  double c = 0.0;
  std::vector<double> epsilons;
  std::vector<double> scaled_norms;
  std::vector<int> iterations;
  /// Set when power iteration did not settle for some grid point.
  bool low_confidence = false;
};

/// Estimates the resolvent constant of A = F'(y) over an eps grid. The
/// operator norm is the largest singular value of (A + eps I)^{-1}, found by
/// power iteration on (A + eps I)^{-T} (A + eps I)^{-1}.
ResolventEstimate estimate_resolvent_constant(const OperatorModel& op,
                                              std::span<const double> epsilons,
                                              const ResolventOptions& options = {});

}  // namespace singreg
