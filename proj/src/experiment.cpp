// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "singreg/errors.hpp"
#include "singreg/log.hpp"
#include "singreg/sampling.hpp"

namespace singreg {

const char* const kSweepCsvHeader =
    "epsilon,norm_solution,iterations,final_residual,max_step_ratio,ball_radius,exited_ball";

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.17g}", value);
}

PreparedProblem prepare_problem(const ExperimentConfig& config) {
  PreparedProblem p;
  p.spec = config.problem;
  p.op = build_operator(p.spec);
  p.norm = config.norm.value_or(p.op->natural_norm());
  p.mode = config.mode;
  p.tolerances = config.tolerances;
  const OperatorModel& op = *p.op;

  if (!p.cubic_form()) {
    p.v = op.base_point().with_coeffs(p.spec.v);
    const auto bounds = op.analytic_bounds(1.0).value_or(DerivativeBounds{});
    p.m2 = bounds.m2;
    p.m3 = bounds.m3;
    if (p.spec.c) {
      p.c = *p.spec.c;
    } else if (op.jacobian_symmetric_psd(op.base_point())) {
      p.c = 1.0;  // selfadjoint A >= 0
    } else {
      if (p.mode == SolveMode::Certified) {
        throw PreconditionError(
            "certified mode needs problem.c when F'(y) is not symmetric positive semidefinite");
      }
      p.c = estimate_resolvent_constant(op, config.resolvent_epsilons).c;
      log::warn("using estimated resolvent constant c = {} (a lower bound)", p.c);
    }
    p.v_norm = norm(p.v, p.norm);
    p.w = choose_w(op, p.v, WBoundCheck{p.c, p.m2}, p.norm);
    return p;
  }

  if (p.spec.kind == ProblemKind::NewtonianCubic) {
    if (p.spec.h_profile == "smooth") {
      Rng rng(p.spec.h_seed);
      p.h = random_smooth_field(op.grid(), rng);
    } else {
      p.h = op.zero().with_coeffs(Eigen::VectorXd::Ones(op.dimension()));
    }
  } else {
    p.h = HilbertVector(Eigen::VectorXd::Constant(1, p.spec.h_scalar));
  }
  const double h_norm = norm(p.h, op.natural_norm());
  if (h_norm > 0.0) p.h = (1.0 / h_norm) * p.h;
  CubicConstantOptions copts;
  copts.samples = config.samples;
  copts.seed = config.seed ^ 0xc0beULL;
  p.cubic = estimate_cubic_form_constants(op, copts);
  return p;
}

SolveReport solve_at(const PreparedProblem& problem, double epsilon, const PicardOptions* overrides) {
  PicardOptions options;
  if (overrides) options = *overrides;
  options.mode = overrides ? overrides->mode : problem.mode;
  if (!overrides) options.tolerances = problem.tolerances;

  if (problem.cubic_form()) {
    return picard_solve_newtonian(*problem.op, epsilon, problem.h, problem.cubic, options);
  }

  std::optional<TheoremConstants> constants;
  if (problem.m2 > 0.0) {
    try {
      constants = compute_theorem_constants(problem.c, problem.m2, problem.m3, problem.v_norm, epsilon);
    } catch (const AdmissibilityError& e) {
      if (options.mode == SolveMode::Certified) throw;
      log::warn("{}; running without theorem constants", e.what());
    }
  } else if (options.mode == SolveMode::Certified) {
    throw PreconditionError("certified mode needs M2 > 0");
  }
  RegularizationProblem rp{problem.op, epsilon, problem.w, problem.norm};
  return picard_solve_general(rp, constants, options);
}

namespace {

SweepRow make_row(const PreparedProblem& problem, double epsilon, const SolveReport& report) {
  SweepRow row;
  row.epsilon = epsilon;
  row.norm_solution = norm(report.correction, problem.norm);
  row.iterations = report.iterations;
  row.final_residual = report.final_residual;
  row.max_step_ratio = report.max_step_ratio();
  row.ball_radius = report.ball_radius_used;
  row.exited_ball = report.exited_ball;
  row.converged = report.converged;
  row.contraction_bound = report.contraction_bound;
  return row;
}

std::optional<RateFit> try_fit(const std::vector<std::pair<double, double>>& pairs, std::string& note) {
  try {
    return fit_rate(pairs);
  } catch (const NoFitError& e) {
    note = e.what();
    return std::nullopt;
  }
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
  const PreparedProblem problem = prepare_problem(config);
  const std::size_t n = config.epsilons.size();
  std::vector<std::optional<SolveReport>> reports(n);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        reports[i] = solve_at(problem, config.epsilons[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult out;
  std::vector<std::pair<double, double>> norms;
  std::vector<std::pair<double, double>> ratios;
  for (std::size_t i = 0; i < n; ++i) {
    const SweepRow row = make_row(problem, config.epsilons[i], *reports[i]);
    norms.emplace_back(row.epsilon, row.norm_solution);
    ratios.emplace_back(row.epsilon, row.max_step_ratio);
    out.rows.push_back(row);
    out.reports.push_back(std::move(*reports[i]));
  }
  out.rate_fit = try_fit(norms, out.rate_fit_note);
  if (problem.cubic_form()) out.contraction_fit = try_fit(ratios, out.contraction_fit_note);
  return out;
}

namespace {

void write_fit(std::ostream& out, const char* label, const std::optional<RateFit>& fit,
               const std::string& note) {
  if (fit) {
    out << "# " << label << " slope=" << format_real(fit->slope)
        << " intercept=" << format_real(fit->intercept) << " r2=" << format_real(fit->r_squared)
        << " points=" << fit->points << '\n';
  } else {
    out << "# " << label << " skipped: " << note << '\n';
  }
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    out << format_real(r.epsilon) << ',' << format_real(r.norm_solution) << ',' << r.iterations
        << ',' << format_real(r.final_residual) << ',' << format_real(r.max_step_ratio) << ','
        << format_real(r.ball_radius) << ',' << (r.exited_ball ? 1 : 0) << '\n';
  }
  write_fit(out, "rate_fit", result.rate_fit, result.rate_fit_note);
  if (result.contraction_fit || !result.contraction_fit_note.empty()) {
    write_fit(out, "contraction_fit", result.contraction_fit, result.contraction_fit_note);
  }
}

void write_sweep_summary(std::ostream& out, const SweepResult& result) {
  out << fmt::format("{:>12} {:>14} {:>6} {:>12} {:>12} {:>12} {:>5} {:>5}\n", "epsilon",
                     "|solution|", "iters", "residual", "max ratio", "ball R", "exit", "conv");
  for (const SweepRow& r : result.rows) {
    out << fmt::format("{:>12.4e} {:>14.6e} {:>6} {:>12.3e} {:>12.4e} {:>12.4e} {:>5} {:>5}\n",
                       r.epsilon, r.norm_solution, r.iterations, r.final_residual,
                       r.max_step_ratio, r.ball_radius, r.exited_ball ? "yes" : "no",
                       r.converged ? "yes" : "no");
  }
  if (result.rate_fit) {
    out << fmt::format("rate fit: slope {:.6f}, r^2 {:.6f} ({} points)\n", result.rate_fit->slope,
                       result.rate_fit->r_squared, result.rate_fit->points);
  } else {
    out << "rate fit skipped: " << result.rate_fit_note << '\n';
  }
  if (result.contraction_fit) {
    out << fmt::format("contraction fit: slope {:.6f}, r^2 {:.6f}\n", result.contraction_fit->slope,
                       result.contraction_fit->r_squared);
  }
}

ResolventCertification certify_resolvent(const ExperimentConfig& config) {
  const auto op = build_operator(config.problem);
  ResolventCertification out;
  out.estimate = estimate_resolvent_constant(*op, config.resolvent_epsilons);
  out.bound = config.resolvent_bound;
  out.pass = out.estimate.c <= out.bound;
  return out;
}

std::vector<VerifyEntry> verify(const ExperimentConfig& config) {
  const PreparedProblem problem = prepare_problem(config);
  const OperatorModel& op = *problem.op;
  std::vector<VerifyEntry> out;
  for (double eps : config.epsilons) {
    VerifyEntry e;
    e.epsilon = eps;
    try {
      if (problem.spec.kind == ProblemKind::ScalarCubic) {
        // A = 0 admits no v with y - w = A v; the general iteration runs exploratory.
        PicardOptions opts;
        opts.mode = SolveMode::Exploratory;
        opts.tolerances = problem.tolerances;
        const HilbertVector w = eps * problem.h;
        const SolveReport rep =
            picard_solve_general({problem.op, eps, w, problem.norm}, std::nullopt, opts);
        e.solver_value = rep.solution;
      } else {
        e.solver_value = solve_at(problem, eps).solution;
      }
    } catch (const Error& err) {
      e.oracle_ok = false;
      e.oracle_message = std::string("solver: ") + err.what();
      out.push_back(std::move(e));
      continue;
    }

    try {
      if (problem.spec.kind == ProblemKind::ScalarCubic) {
        e.method = oracle::Method::Bisection;
        e.tolerance = 1e-10;
        const double target = eps * problem.h[0];
        auto f = [&](double u) { return u * u * u + eps * (u - target); };
        double lo = std::min(0.0, target);
        double hi = std::max(0.0, target);
        if (target == 0.0) {
          lo = -1.0;
          hi = 1.0;
        }
        const auto r = oracle::scalar_bisection(f, lo, hi, 1e-13 * std::max(std::abs(target), 1e-3));
        e.oracle_value = HilbertVector(Eigen::VectorXd::Constant(1, r.scalar()));
      } else {
        e.method = oracle::Method::Newton;
        e.tolerance = 1e-8;
        const HilbertVector w = problem.cubic_form() ? eps * problem.h : problem.w;
        oracle::NewtonOptions nopts;
        nopts.norm = problem.norm;
        const auto r = oracle::dense_newton(op, eps, w, op.base_point(), 1e-12, nopts);
        if (!r.certified) {
          e.oracle_ok = false;
          e.oracle_message = "newton: residual " + format_real(r.certified_error) + " above 1e-12";
        }
        e.oracle_value = r.vector();
      }
    } catch (const Error& err) {
      e.oracle_ok = false;
      e.oracle_message = std::string("oracle: ") + err.what();
    }
    if (e.oracle_ok) {
      e.distance = norm(e.solver_value - e.oracle_value, problem.norm);
      e.pass = e.distance <= e.tolerance;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace singreg
