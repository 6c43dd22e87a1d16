// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/rate_fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "singreg/errors.hpp"

namespace singreg {

RateFit fit_rate(std::span<const std::pair<double, double>> pairs) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [eps, value] : pairs) {
    if (eps > 0.0 && value > 0.0 && std::isfinite(eps) && std::isfinite(value)) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(value));
    }
  }
  const auto n = static_cast<int>(xs.size());
  if (n < 3) {
    throw NoFitError("fit_rate: need at least 3 positive pairs, have " + std::to_string(n));
  }
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw NoFitError("fit_rate: all eps values coincide");

  RateFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace singreg
