// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>

namespace singreg {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Ordinary least squares of log(value) against log(eps). Pairs with a
/// non-positive eps or value are ignored; fewer than three usable pairs throw
/// NoFitError.
RateFit fit_rate(std::span<const std::pair<double, double>> pairs);

}  // namespace singreg
