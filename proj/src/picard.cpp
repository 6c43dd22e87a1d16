// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/picard.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "singreg/errors.hpp"
#include "singreg/log.hpp"
#include "singreg/newtonian.hpp"
#include "singreg/sampling.hpp"
#include "singreg/shifted_solve.hpp"

namespace singreg {

std::string_view to_string(SolveMode mode) noexcept {
  return mode == SolveMode::Certified ? "certified" : "exploratory";
}

SolveMode parse_solve_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "certified") return SolveMode::Certified;
  if (lower == "exploratory") return SolveMode::Exploratory;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::StepTolerance: return "step_tolerance";
    case StopReason::Stagnated: return "stagnated";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Diverged: return "diverged";
  }
  return "?";
}

double SolveReport::max_step_ratio() const noexcept {
  double m = 0.0;
  for (double r : step_ratio_history) m = std::max(m, r);
  return m;
}

namespace {

constexpr double kBallSlack = 1e-12;

struct LoopSettings {
  NormKind norm;
  double radius;
  double step_tolerance;
  SolverTolerances tolerances;
  SolveMode mode;
  bool record;
};

void check_ball(SolveReport& report, const LoopSettings& s, int k, double z_norm) {
  if (!(z_norm <= s.radius * (1.0 + kBallSlack))) {
    report.exited_ball = true;
    ++report.ball_violations;
    if (s.mode == SolveMode::Certified) {
      throw BallExitError("iterate " + std::to_string(k) + " left the ball: |z| = " +
                              std::to_string(z_norm) + " > R = " + std::to_string(s.radius),
                          k, z_norm, s.radius);
    }
  }
}

// Runs z <- map(z) recording the report histories. `residual` evaluates the
// equation residual at an iterate.
template <class Map, class Residual>
void run_fixed_point(SolveReport& report, HilbertVector z, const Map& map,
                     const Residual& residual, const LoopSettings& s) {
  report.ball_radius_used = s.radius;
  report.mode = s.mode;
  double z_norm = norm(z, s.norm);
  check_ball(report, s, 0, z_norm);
  report.iterate_norms.push_back(z_norm);
  report.residual_history.push_back(residual(z));
  if (s.record) report.iterates.push_back(z);

  double previous_step = 0.0;
  report.stop_reason = StopReason::MaxIterations;
  for (int k = 1; k <= s.tolerances.max_iterations; ++k) {
    HilbertVector next;
    double res = 0.0;
    try {
      next = map(z);
      res = residual(next);
    } catch (const NonFiniteError&) {
      report.stop_reason = StopReason::Diverged;
      break;
    }
    const double step = norm(next - z, s.norm);
    if (k >= 2 && previous_step > 0.0) report.step_ratio_history.push_back(step / previous_step);
    report.step_history.push_back(step);
    previous_step = step;

    z = std::move(next);
    z_norm = norm(z, s.norm);
    report.iterations = k;
    report.iterate_norms.push_back(z_norm);
    report.residual_history.push_back(res);
    if (s.record) report.iterates.push_back(z);
    check_ball(report, s, k, z_norm);

    // The residual alone is not a stopping test: it scales with eps, so a
    // fixed 1e-10 is met long before the iterate settles for small eps.
    if (step <= s.step_tolerance) {
      report.stop_reason = res <= s.tolerances.residual ? StopReason::StepTolerance
                                                        : StopReason::Stagnated;
      break;
    }
  }
  report.final_residual = report.residual_history.back();
  report.converged = report.stop_reason != StopReason::Diverged &&
                     report.final_residual <= s.tolerances.residual;
  report.correction = std::move(z);
}

double default_step_tolerance(const SolverTolerances& tol, double radius) {
  if (tol.step > 0.0) return tol.step;
  const double scale = std::isfinite(radius) ? std::max(1.0, radius) : 1.0;
  return 1e-12 * scale;
}

}  // namespace

SolveReport picard_solve_general(const RegularizationProblem& problem,
                                 const std::optional<TheoremConstants>& constants,
                                 const PicardOptions& options) {
  if (!problem.op) throw std::invalid_argument("picard_solve_general: problem has no operator");
  const OperatorModel& op = *problem.op;
  const double eps = problem.epsilon;
  if (!(eps > 0.0)) throw std::invalid_argument("picard_solve_general: eps must be > 0");
  op.require_in_space(problem.w, "picard_solve_general");

  double radius = std::numeric_limits<double>::infinity();
  if (constants) radius = constants->r_min;

  if (options.mode == SolveMode::Certified) {
    if (!constants) {
      throw PreconditionError("certified solve needs theorem constants");
    }
    if (std::abs(constants->epsilon - eps) > 1e-14 * eps) {
      throw PreconditionError("theorem constants were computed for eps = " +
                              std::to_string(constants->epsilon) + ", problem has eps = " +
                              std::to_string(eps));
    }
    const double eps0 = std::min(problem.epsilon0, constants->epsilon0);
    if (!(eps <= eps0) || !(constants->q < 1.0)) {
      throw PreconditionError("eps = " + std::to_string(eps) +
                              " is outside the certified range (q = " +
                              std::to_string(constants->q) + ", eps0 = " + std::to_string(eps0) +
                              ")");
    }
  } else if (constants && !(constants->q < 1.0)) {
    log::warn("picard_solve_general: q = {} >= 1, contraction is not guaranteed", constants->q);
  }

  const HilbertVector& y = op.base_point();
  const HilbertVector offset = y - problem.w;
  const ShiftedSolver solver(op, eps, y, ShiftedSolveOptions{options.tolerances.linear});
  const HilbertVector forcing = -eps * solver.solve(offset);
  const HilbertVector f_y = op.evaluate(y);

  auto map = [&](const HilbertVector& z) {
    const HilbertVector k = op.evaluate(y + z) - f_y - op.derivative_apply(y, z);
    return forcing - solver.solve(k);
  };
  auto residual = [&](const HilbertVector& z) {
    return norm(op.evaluate(y + z) + eps * z + eps * offset, problem.norm);
  };

  SolveReport report;
  if (constants) report.contraction_bound = constants->q;
  HilbertVector start = options.start.value_or(op.zero());
  op.require_in_space(start, "picard_solve_general start");
  const LoopSettings settings{problem.norm, radius, default_step_tolerance(options.tolerances, radius),
                              options.tolerances, options.mode, options.record_iterates};
  run_fixed_point(report, std::move(start), map, residual, settings);
  report.solution = y + report.correction;
  return report;
}

namespace {

void require_cubic_form(const OperatorModel& op) {
  if (!op.base_point().is_zero()) {
    throw PreconditionError("cubic fixed-point form needs base point y = 0");
  }
  Rng rng(1);
  const HilbertVector d = op.random_direction(rng);
  if (!op.derivative_apply(op.zero(), d).is_zero()) {
    throw PreconditionError("cubic fixed-point form needs F'(0) = 0");
  }
}

}  // namespace

CubicFormConstants cubic_form_constants(double c1, double c2) {
  CubicFormConstants k;
  k.c1 = c1;
  k.c2 = c2;
  const double ball = std::pow(1.0 + c1, -3.0);
  const double contraction = c2 > 0.0 ? std::pow(c2, -3.0) : std::numeric_limits<double>::infinity();
  k.epsilon0 = std::min(ball, contraction);
  return k;
}

CubicFormConstants estimate_cubic_form_constants(const OperatorModel& op,
                                                 const CubicConstantOptions& options) {
  if (options.samples < 1) throw std::invalid_argument("estimate_cubic_form_constants: samples < 1");
  require_cubic_form(op);
  const NormKind kind = op.natural_norm();
  Rng rng(options.seed);
  double c1 = 0.0;
  double c2 = 0.0;
  // Both quotients are scale invariant for a cubic map, so sample on R = 1.
  for (int s = 0; s < options.samples; ++s) {
    const HilbertVector u = scaled_to_norm(op.random_direction(rng), 1.0, kind);
    c1 = std::max(c1, norm(op.evaluate(u), kind));

    const HilbertVector a =
        random_ball_radius(1.0, op.dimension(), rng) * scaled_to_norm(op.random_direction(rng), 1.0, kind);
    const HilbertVector b =
        random_ball_radius(1.0, op.dimension(), rng) * scaled_to_norm(op.random_direction(rng), 1.0, kind);
    const double gap = norm(a - b, kind);
    if (gap > 0.0) c2 = std::max(c2, norm(op.evaluate(a) - op.evaluate(b), kind) / gap);
  }
  CubicFormConstants k = cubic_form_constants(options.safety * c1, options.safety * c2);
  k.samples = options.samples;
  return k;
}

SolveReport picard_solve_newtonian(const OperatorModel& op, double epsilon, const HilbertVector& h,
                                   const std::optional<CubicFormConstants>& constants,
                                   const PicardOptions& options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("picard_solve_newtonian: eps must be > 0");
  op.require_in_space(h, "picard_solve_newtonian");
  const NormKind kind = op.natural_norm();
  const double radius = std::pow(epsilon, 2.0 / 3.0);

  HilbertVector direction = h;
  if (options.mode == SolveMode::Certified) {
    require_cubic_form(op);
    if (const auto* newtonian = dynamic_cast<const NewtonianCubicOperator*>(&op);
        newtonian && newtonian->has_shift()) {
      throw PreconditionError("certified cubic solve needs f = 0");
    }
    if (!constants) throw PreconditionError("certified cubic solve needs c1, c2 constants");
    if (!(epsilon < constants->epsilon0)) {
      throw PreconditionError("eps = " + std::to_string(epsilon) + " violates eps < eps0 = min((1+c1)^-3, c2^-3) = " +
                              std::to_string(constants->epsilon0));
    }
    const double h_norm = norm(h, kind);
    if (!(h_norm > 0.0)) throw PreconditionError("certified cubic solve needs h != 0");
    direction = (1.0 / h_norm) * h;
  } else if (constants && !(epsilon < constants->epsilon0)) {
    log::warn("picard_solve_newtonian: eps = {} >= eps0 = {}", epsilon, constants->epsilon0);
  }

  const HilbertVector w = epsilon * direction;
  auto map = [&](const HilbertVector& u) { return w - (1.0 / epsilon) * op.evaluate(u); };
  auto residual = [&](const HilbertVector& u) {
    return norm(op.evaluate(u) + epsilon * (u - w), kind);
  };

  SolveReport report;
  if (constants) report.contraction_bound = constants->c2 * std::cbrt(epsilon);
  HilbertVector start = options.start.value_or(op.zero());
  op.require_in_space(start, "picard_solve_newtonian start");
  const LoopSettings settings{kind, radius, default_step_tolerance(options.tolerances, radius),
                              options.tolerances, options.mode, options.record_iterates};
  run_fixed_point(report, std::move(start), map, residual, settings);
  report.solution = report.correction;
  return report;
}

}  // namespace singreg
