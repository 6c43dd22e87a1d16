// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "singreg/errors.hpp"
#include "singreg/sampling.hpp"

namespace singreg {

ResolventEstimate estimate_resolvent_constant(const OperatorModel& op,
                                              std::span<const double> epsilons,
                                              const ResolventOptions& options) {
  if (epsilons.empty()) throw std::invalid_argument("estimate_resolvent_constant: empty eps grid");
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("estimate_resolvent_constant: eps must be > 0");
  }
  if (op.dimension() > options.dense_limit) {
    throw PreconditionError("estimate_resolvent_constant: operator too large to materialize");
  }
  const Eigen::MatrixXd a = op.materialize_jacobian(op.base_point());
  const Index n = a.rows();

  Rng rng(options.seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  Eigen::VectorXd start(n);
  for (Index i = 0; i < n; ++i) start[i] = jitter(rng);
  start.normalize();

  ResolventEstimate out;
  for (double eps : epsilons) {
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += eps;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu_t(shifted.transpose());

    Eigen::VectorXd x = start;
    double lambda = 0.0;
    bool settled = false;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      const Eigen::VectorXd y = lu.solve(x);
      const double next = y.squaredNorm();
      Eigen::VectorXd z = lu_t.solve(y);
      const double z_norm = z.norm();
      if (!(z_norm > 0.0) || !std::isfinite(next)) break;
      x = z / z_norm;
      if (it > 0 && std::abs(next - lambda) <= options.tolerance * next) {
        lambda = next;
        settled = true;
        break;
      }
      lambda = next;
    }
    const double scaled = eps * std::sqrt(lambda);
    out.epsilons.push_back(eps);
    out.scaled_norms.push_back(scaled);
    out.iterations.push_back(it + 1);
    out.low_confidence = out.low_confidence || !settled;
    out.c = std::max(out.c, scaled);
  }
  return out;
}

}  // namespace singreg
