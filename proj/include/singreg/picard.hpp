// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "singreg/hilbert_vector.hpp"
#include "singreg/norms.hpp"
#include "singreg/operator.hpp"
#include "singreg/theorem_constants.hpp"

namespace singreg {

/// certified: every sufficient condition is enforced and violations throw.
/// exploratory: violations are logged and the iteration runs anyway.
enum class SolveMode { Certified, Exploratory };

std::string_view to_string(SolveMode mode) noexcept;
SolveMode parse_solve_mode(std::string_view text);

struct SolverTolerances {
  /// Step tolerance; a non-positive value selects 1e-12 * max(1, R).
  double step = 0.0;
  double residual = 1e-10;
  double linear = 1e-12;
  int max_iterations = 500;
};

struct PicardOptions {
  SolveMode mode = SolveMode::Certified;
  SolverTolerances tolerances;
  /// Initial iterate; zero when absent.
  std::optional<HilbertVector> start;
  /// Keeps every iterate in the report.
  bool record_iterates = false;
};

/// F(u) + eps (u - w) = 0 for u = y + z.
struct RegularizationProblem {
  std::shared_ptr<const OperatorModel> op;
  double epsilon = 0.0;
  HilbertVector w;
  NormKind norm = NormKind::L2;
  /// Upper end of the certified eps range.
  double epsilon0 = std::numeric_limits<double>::infinity();
};

/// Stagnated: the step tolerance was met but the residual is above tolerance.
enum class StopReason { StepTolerance, Stagnated, MaxIterations, Diverged };

std::string_view to_string(StopReason reason) noexcept;

struct SolveReport {
  /// u = y + z.
  HilbertVector solution;
  /// z = u - y; equals solution for the cubic form (y = 0).
  HilbertVector correction;
  int iterations = 0;
  /// Residual at every iterate z_0 .. z_iterations.
  std::vector<double> residual_history;
  /// |z_{k+1} - z_k| / |z_k - z_{k-1}| for k >= 1.
  std::vector<double> step_ratio_history;
  std::vector<double> step_history;
  std::vector<double> iterate_norms;
  std::vector<HilbertVector> iterates;
  double final_residual = 0.0;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIterations;
  double ball_radius_used = std::numeric_limits<double>::infinity();
  bool exited_ball = false;
  int ball_violations = 0;
  /// Theoretical contraction factor for this run (q, or c2 eps^(1/3)).
  double contraction_bound = std::numeric_limits<double>::quiet_NaN();
  SolveMode mode = SolveMode::Certified;

  double max_step_ratio() const noexcept;
};

/// Picard iteration z <- -A_eps^{-1} K(z) - eps A_eps^{-1} (y - w), A = F'(y).
///
/// Certified mode needs `constants` (matching eps) and eps <= eps0; the ball
/// is B(0, r_min) and leaving it throws BallExitError. Hitting max_iterations
/// yields a non-converged report rather than an exception.
SolveReport picard_solve_general(const RegularizationProblem& problem,
                                 const std::optional<TheoremConstants>& constants,
                                 const PicardOptions& options = {});

/// Per-operator constants for the cubic fixed-point form:
/// |F(u)| <= c1 |u|^3 and |F(u) - F(z)| <= c2 R^2 |u - z| on B(0, R).
struct CubicFormConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  /// min((1 + c1)^-3, c2^-3).
  double epsilon0 = 0.0;
  int samples = 0;
};

struct CubicConstantOptions {
  int samples = 64;
  std::uint64_t seed = 0xc0be;
  double safety = 1.25;
};

/// Samples the quotients defining c1 and c2. Requires y = 0 and F'(0) = 0.
CubicFormConstants estimate_cubic_form_constants(const OperatorModel& op,
                                                 const CubicConstantOptions& options = {});

CubicFormConstants cubic_form_constants(double c1, double c2);

/// Picard iteration u <- -(1/eps) F(u) + eps h for F(u) + eps (u - eps h) = 0.
///
/// Works in the operator's natural norm (H1 for the Newtonian operator) on
/// the ball of radius eps^(2/3). Certified mode normalizes h to unit norm,
/// requires eps < eps0 from `constants` and throws BallExitError on exit;
/// exploratory mode uses h as given.
SolveReport picard_solve_newtonian(const OperatorModel& op, double epsilon, const HilbertVector& h,
                                   const std::optional<CubicFormConstants>& constants,
                                   const PicardOptions& options = {});

}  // namespace singreg
