// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "singreg/config.hpp"
#include "singreg/oracle.hpp"
#include "singreg/picard.hpp"
#include "singreg/rate_fit.hpp"
#include "singreg/resolvent.hpp"
#include "singreg/theorem_constants.hpp"

namespace singreg {

/// Operator plus everything the per-eps solves share.
struct PreparedProblem {
  ProblemSpec spec;
  std::shared_ptr<const OperatorModel> op;
  NormKind norm = NormKind::L2;
  SolveMode mode = SolveMode::Certified;
  SolverTolerances tolerances;

  // General form (matrix_quadratic).
  HilbertVector v;
  HilbertVector w;
  double c = 1.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double v_norm = 0.0;

  // Cubic form (newtonian_cubic, scalar_cubic); w = eps h.
  HilbertVector h;
  std::optional<CubicFormConstants> cubic;

  bool cubic_form() const noexcept { return spec.kind != ProblemKind::MatrixQuadratic; }
};

PreparedProblem prepare_problem(const ExperimentConfig& config);

/// One solve at the given eps. General problems get their theorem constants
/// computed here; certified-mode failures propagate as exceptions.
SolveReport solve_at(const PreparedProblem& problem, double epsilon,
                     const PicardOptions* overrides = nullptr);

struct SweepRow {
  double epsilon = 0.0;
  double norm_solution = 0.0;
  int iterations = 0;
  double final_residual = 0.0;
  double max_step_ratio = 0.0;
  double ball_radius = 0.0;
  bool exited_ball = false;
  bool converged = false;
  double contraction_bound = 0.0;
};

struct SweepResult {
  /// Ordered by eps descending.
  std::vector<SweepRow> rows;
  std::optional<RateFit> rate_fit;
  std::string rate_fit_note;
  /// Fit of max_step_ratio against eps.
  std::optional<RateFit> contraction_fit;
  std::string contraction_fit_note;
  std::vector<SolveReport> reports;
};

/// Solves once per eps (concurrently when config.threads > 1) and fits the
/// solution-norm rate.
SweepResult run_sweep(const ExperimentConfig& config);

extern const char* const kSweepCsvHeader;

/// Rows in 17-significant-digit form followed by '#'-prefixed fit lines.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_summary(std::ostream& out, const SweepResult& result);

struct ResolventCertification {
  ResolventEstimate estimate;
  double bound = 0.0;
  bool pass = false;
};

ResolventCertification certify_resolvent(const ExperimentConfig& config);

struct VerifyEntry {
  double epsilon = 0.0;
  HilbertVector solver_value;
  HilbertVector oracle_value;
  double distance = 0.0;
  double tolerance = 0.0;
  oracle::Method method = oracle::Method::Newton;
  bool oracle_ok = true;
  std::string oracle_message;
  bool pass = false;
};

/// Main solver against the matching oracle for every eps in the config:
/// bisection for scalar_cubic (1e-10), dense Newton otherwise (1e-8).
std::vector<VerifyEntry> verify(const ExperimentConfig& config);

/// Formats a double with 17 significant digits.
std::string format_real(double value);

}  // namespace singreg
