// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "singreg/config.hpp"
#include "singreg/errors.hpp"
#include "singreg/experiment.hpp"
#include "singreg/operators.hpp"
#include "singreg/oracle.hpp"
#include "singreg/picard.hpp"
#include "singreg/rate_fit.hpp"
#include "singreg/resolvent.hpp"
#include "singreg/sampling.hpp"
#include "singreg/theorem_constants.hpp"

namespace {

using namespace singreg;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Planar quadratic family: A = diag(0, 1), M2 = sqrt(2), c = 1.
const char* kPlanarConfig = R"({
  "schema_version": 1,
  "problem": {"kind": "matrix_quadratic", "preset": "planar", "v": [0.05, 0.1]},
  "epsilon_range": {"min": 1e-4, "max": 1e-1, "count": 8},
  "mode": "certified", "seed": 1
})";

const char* kNewtonianConfig = R"({
  "schema_version": 1,
  "problem": {"kind": "newtonian_cubic", "grid": {"points_per_axis": 12}, "h": "constant"},
  "epsilons": [0.031622776601683794, 0.01, 0.0031622776601683794, 0.001],
  "mode": "certified", "seed": 1
})";

struct PlanarRun {
  ExperimentConfig config;
  PreparedProblem problem;
  SweepResult sweep;
  double seconds = 0.0;
};

const PlanarRun& planar_run() {
  static const PlanarRun run = [] {
    PlanarRun r;
    r.config = parse_config(kPlanarConfig);
    const auto t0 = Clock::now();
    r.sweep = run_sweep(r.config);
    r.seconds = seconds_since(t0);
    r.problem = prepare_problem(r.config);
    return r;
  }();
  return run;
}

struct NewtonianRun {
  ExperimentConfig config;
  PreparedProblem problem;
  std::vector<SolveReport> reports;
  double seconds = 0.0;
};

const NewtonianRun& newtonian_run() {
  static const NewtonianRun run = [] {
    NewtonianRun r;
    r.config = parse_config(kNewtonianConfig);
    const auto t0 = Clock::now();
    r.problem = prepare_problem(r.config);
    PicardOptions opts;
    opts.mode = SolveMode::Certified;
    opts.record_iterates = true;
    for (double eps : r.config.epsilons) r.reports.push_back(solve_at(r.problem, eps, &opts));
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

double norm_difference(const HilbertVector& a, const HilbertVector& b) { return (a - b).coeffs().norm(); }

Outcome criterion_rate() {
  const PlanarRun& run = planar_run();
  if (!run.sweep.rate_fit) return {false, "no fit: " + run.sweep.rate_fit_note};
  const RateFit& f = *run.sweep.rate_fit;
  const bool pass = f.slope >= 0.9 && f.r_squared >= 0.99 && run.seconds < 1.0;
  return {pass, fmt::format("slope {:.5f} (>= 0.9), r^2 {:.6f} (>= 0.99), runtime {:.3f} s (< 1 s)",
                            f.slope, f.r_squared, run.seconds)};
}

Outcome criterion_ball_general() {
  const PlanarRun& run = planar_run();
  const PreparedProblem& p = run.problem;
  int exits = 0;
  double worst_radius_error = 0.0;
  double worst_fill = 0.0;
  for (std::size_t i = 0; i < run.sweep.rows.size(); ++i) {
    const SolveReport& r = run.sweep.reports[i];
    const double eps = run.sweep.rows[i].epsilon;
    const double rho = std::sqrt(1.0 - 2.0 * p.m2 * p.v_norm * p.c * (1.0 + p.c));
    const double radius = eps * (1.0 - rho) / (p.c * p.m2);
    worst_radius_error = std::max(worst_radius_error, std::abs(r.ball_radius_used - radius) / radius);
    exits += r.ball_violations;
    for (double n : r.iterate_norms) {
      if (n > radius) ++exits;
      worst_fill = std::max(worst_fill, n / radius);
    }
  }
  const bool pass = exits == 0 && worst_radius_error <= 1e-12;
  return {pass, fmt::format("{} exits over {} runs, max |z_k|/R {:.4f}, radius formula mismatch {:.1e}",
                            exits, run.sweep.rows.size(), worst_fill, worst_radius_error)};
}

Outcome criterion_contraction_general() {
  const PlanarRun& run = planar_run();
  const PreparedProblem& p = run.problem;
  bool pass = true;
  double worst_margin = -INFINITY;
  std::string worst;
  for (std::size_t i = 0; i < run.sweep.rows.size(); ++i) {
    const double eps = run.sweep.rows[i].epsilon;
    const double rho = std::sqrt(1.0 - 2.0 * p.m2 * p.v_norm * p.c * (1.0 + p.c));
    const double radius = eps * (1.0 - rho) / (p.c * p.m2);
    const double q = (p.c / eps) * (p.m3 * radius * radius / 6.0 + p.m2 * radius);
    const double ratio = run.sweep.reports[i].max_step_ratio();
    if (!(ratio <= q + 0.05)) pass = false;
    if (ratio - q > worst_margin) {
      worst_margin = ratio - q;
      worst = fmt::format("eps {:.2e}: ratio {:.4f} vs q {:.4f}", eps, ratio, q);
    }
  }
  return {pass, "max step ratio <= q + 0.05 in every run; closest " + worst};
}

Outcome criterion_uniqueness() {
  const PlanarRun& run = planar_run();
  const PreparedProblem& p = run.problem;
  const double eps = 1e-2;
  const TheoremConstants k = compute_theorem_constants(p.c, p.m2, p.m3, p.v_norm, eps);
  Rng rng(4242);
  std::vector<HilbertVector> solutions;
  for (int s = 0; s < 5; ++s) {
    PicardOptions opts;
    opts.mode = SolveMode::Certified;
    opts.tolerances = p.tolerances;
    const HilbertVector dir = random_gaussian(p.op->zero(), rng);
    opts.start = scaled_to_norm(dir, random_ball_radius(k.r_min, p.op->dimension(), rng), p.norm);
    const SolveReport r = solve_at(p, eps, &opts);
    if (!r.converged) return {false, fmt::format("start {} did not converge", s)};
    solutions.push_back(r.solution);
  }
  double spread = 0.0;
  for (const auto& a : solutions)
    for (const auto& b : solutions) spread = std::max(spread, norm_difference(a, b));
  return {spread <= 1e-9, fmt::format("5 starts in B(0, {:.3e}), max pairwise distance {:.2e} (<= 1e-9)",
                                      k.r_min, spread)};
}

Outcome criterion_oracles() {
  const PlanarRun& run = planar_run();
  const PreparedProblem& p = run.problem;
  double worst_newton = 0.0;
  for (std::size_t i = 0; i < run.sweep.rows.size(); ++i) {
    const double eps = run.sweep.rows[i].epsilon;
    const auto ref = oracle::dense_newton(*p.op, eps, p.w, p.op->base_point(), 1e-14);
    if (!ref.certified) return {false, fmt::format("newton oracle not certified at eps {:.2e}", eps)};
    worst_newton = std::max(worst_newton, norm_difference(run.sweep.reports[i].solution, ref.vector()));
  }

  const auto cubic = std::make_shared<ScalarCubicOperator>();
  double worst_bisection = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    PicardOptions opts;
    opts.mode = SolveMode::Exploratory;
    const RegularizationProblem rp{cubic, eps, HilbertVector(Eigen::VectorXd::Constant(1, eps))};
    const SolveReport r = picard_solve_general(rp, std::nullopt, opts);
    const auto root = oracle::scalar_bisection(
        [eps](double u) { return u * u * u + eps * u - eps * eps; }, 0.0, 1.0, 1e-16);
    worst_bisection = std::max(worst_bisection, std::abs(r.solution[0] - root.scalar()));
  }
  const bool pass = worst_newton <= 1e-8 && worst_bisection <= 1e-10;
  return {pass, fmt::format("Picard vs Newton {:.2e} (<= 1e-8), Picard vs bisection {:.2e} (<= 1e-10)",
                            worst_newton, worst_bisection)};
}

Outcome criterion_resolvent() {
  const std::vector<double> grid = log_spaced(1e-4, 1.0, 9);
  std::mt19937_64 rng(606);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> dim(2, 50);

  double worst_psd = 0.0;
  for (int m = 0; m < 20; ++m) {
    const int n = dim(rng);
    const int rank = std::uniform_int_distribution<int>(1, n)(rng);
    Eigen::MatrixXd b(n, rank);
    for (Index i = 0; i < b.size(); ++i) b.data()[i] = gauss(rng);
    const auto op = MatrixQuadraticOperator::linear(b * b.transpose() / rank);
    worst_psd = std::max(worst_psd, estimate_resolvent_constant(op, grid).c);
  }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(1, 1) = 1.0;
  const double c_diag = estimate_resolvent_constant(MatrixQuadraticOperator::linear(d), grid).c;
  const double c_zero =
      estimate_resolvent_constant(MatrixQuadraticOperator::linear(Eigen::MatrixXd::Zero(1, 1)), grid).c;

  double worst_formula = 0.0;
  std::uniform_real_distribution<double> spectrum(0.0, 3.0);
  for (int m = 0; m < 10; ++m) {
    const int n = dim(rng);
    Eigen::VectorXd lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = m % 2 == 0 ? spectrum(rng) : spectrum(rng) + 0.05;
    const auto op = MatrixQuadraticOperator::linear(lambda.asDiagonal().toDenseMatrix());
    const ResolventEstimate est = estimate_resolvent_constant(op, grid);
    double exact = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double at = grid[k] / (lambda.minCoeff() + grid[k]);
      exact = std::max(exact, at);
      worst_formula = std::max(worst_formula, std::abs(est.scaled_norms[k] - at));
    }
    worst_formula = std::max(worst_formula, std::abs(est.c - exact));
  }
  const bool pass = worst_psd <= 1.0 + 1e-8 && std::abs(c_diag - 1.0) <= 1e-8 &&
                    std::abs(c_zero - 1.0) <= 1e-8 && worst_formula <= 1e-8;
  return {pass, fmt::format("random PSD max c {:.12f}, diag(0,1) c {:.12f}, zero c {:.12f}, "
                            "diagonal formula error {:.1e}",
                            worst_psd, c_diag, c_zero, worst_formula)};
}

Outcome criterion_newtonian() {
  const NewtonianRun& run = newtonian_run();
  bool pass = run.seconds < 60.0;
  std::string norms;
  double previous = INFINITY;
  double worst_fill = 0.0;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const SolveReport& r = run.reports[i];
    const double radius = std::pow(run.config.epsilons[i], 2.0 / 3.0);
    if (!r.converged) pass = false;
    for (const HilbertVector& u : r.iterates) {
      const double n = norm(u, NormKind::H1);
      worst_fill = std::max(worst_fill, n / radius);
      if (n > radius) pass = false;
    }
    const double n = norm(r.solution, NormKind::H1);
    if (n > previous) pass = false;
    previous = n;
    norms += fmt::format("{}{:.4e}", i ? ", " : "", n);
  }
  return {pass, fmt::format("|u_eps|_1 = [{}], max |u_k|_1/eps^(2/3) {:.4f}, runtime {:.2f} s (< 60 s)",
                            norms, worst_fill, run.seconds)};
}

// Largest |T a - T b| / |a - b| over pairs on the sphere of radius eps^(2/3);
// reported next to the run's own step ratios.
double sampled_ball_lipschitz(const PreparedProblem& p, double eps, int pairs) {
  const OperatorModel& op = *p.op;
  const double radius = std::pow(eps, 2.0 / 3.0);
  Rng rng(31);
  double best = 0.0;
  for (int s = 0; s < pairs; ++s) {
    const HilbertVector a = scaled_to_norm(op.random_direction(rng), radius, NormKind::H1);
    const HilbertVector b = scaled_to_norm(op.random_direction(rng), radius, NormKind::H1);
    const double gap = norm(a - b, NormKind::H1);
    if (gap == 0.0) continue;
    best = std::max(best, norm(op.evaluate(a) - op.evaluate(b), NormKind::H1) / (eps * gap));
  }
  return best;
}

Outcome criterion_newtonian_contraction() {
  const NewtonianRun& run = newtonian_run();
  std::vector<std::pair<double, double>> ratios;
  std::vector<std::pair<double, double>> ball;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const double eps = run.config.epsilons[i];
    ratios.emplace_back(eps, run.reports[i].max_step_ratio());
    ball.emplace_back(eps, sampled_ball_lipschitz(run.problem, eps, 32));
  }
  const RateFit fit = fit_rate(ratios);
  const RateFit ball_fit = fit_rate(ball);
  const bool pass = std::abs(fit.slope - 1.0 / 3.0) <= 0.1;
  return {pass, fmt::format("step-ratio slope {:.4f} (target 1/3 +- 0.1, r^2 {:.4f}); "
                            "for reference, sampled Lipschitz quotient of T on the ball boundary has slope {:.4f}",
                            fit.slope, fit.r_squared, ball_fit.slope)};
}

struct TaylorCheck {
  double worst_quadratic = 0.0;  // max |K(z)| / (M2 |z|^2 / 2)
  double worst_lipschitz = 0.0;  // max |K(z)-K(v)| / ((M3 R^2/6 + M2 R) |z-v|)
};

TaylorCheck sample_taylor(const OperatorModel& op, double radius, const DerivativeBounds& b, int samples,
                          std::uint64_t seed) {
  const NormKind kind = op.natural_norm();
  Rng rng(seed);
  auto draw = [&] {
    return scaled_to_norm(op.random_direction(rng), random_ball_radius(radius, op.dimension(), rng), kind);
  };
  TaylorCheck out;
  const double lip = b.m3 * radius * radius / 6.0 + b.m2 * radius;
  for (int s = 0; s < samples; ++s) {
    const HilbertVector z = draw();
    const double nz = norm(z, kind);
    const HilbertVector kz = taylor_remainder(op, z);
    if (nz > 0.0) out.worst_quadratic = std::max(out.worst_quadratic, norm(kz, kind) / (b.m2 * nz * nz / 2.0));
    const HilbertVector v = draw();
    const double gap = norm(z - v, kind);
    if (gap > 0.0) {
      out.worst_lipschitz =
          std::max(out.worst_lipschitz, norm(kz - taylor_remainder(op, v), kind) / (lip * gap));
    }
  }
  return out;
}

Outcome criterion_taylor() {
  const PlanarRun& run = planar_run();
  const PreparedProblem& p = run.problem;
  const TheoremConstants k = compute_theorem_constants(p.c, p.m2, p.m3, p.v_norm, 1e-2);
  const DerivativeBounds planar_bounds{p.m2, p.m3, true};
  const TaylorCheck planar = sample_taylor(*p.op, k.r_min, planar_bounds, 1000, 91);

  const NewtonianRun& nrun = newtonian_run();
  const double radius = std::pow(1e-2, 2.0 / 3.0);
  const DerivativeBounds nb = estimate_derivative_bounds(*nrun.problem.op, radius);
  const TaylorCheck cubic = sample_taylor(*nrun.problem.op, radius, nb, 1000, 92);

  const double slack = 1.0 + 1e-6;
  const bool pass = planar.worst_quadratic <= slack && planar.worst_lipschitz <= slack &&
                    cubic.worst_quadratic <= slack && cubic.worst_lipschitz <= slack;
  return {pass, fmt::format("worst bound usage: planar {:.4f} / {:.4f}, Newtonian {:.4f} / {:.4f} "
                            "(remainder / Lipschitz, must be <= 1 + 1e-6)",
                            planar.worst_quadratic, planar.worst_lipschitz, cubic.worst_quadratic,
                            cubic.worst_lipschitz)};
}

Outcome criterion_first_iterate() {
  const NewtonianRun& run = newtonian_run();
  double worst = 0.0;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const SolveReport& r = run.reports[i];
    if (r.iterates.size() < 2) return {false, "run stopped before the first iterate"};
    const Eigen::VectorXd expected = run.config.epsilons[i] * run.problem.h.coeffs();
    worst = std::max(worst, (r.iterates[1].coeffs() - expected).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-14, fmt::format("max entry |u_1 - eps h| {:.2e} (<= 1e-14)", worst)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singreg acceptance gate"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(0, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"first-order rate on the planar family", criterion_rate},
      {"ball invariance, general form", criterion_ball_general},
      {"contraction factor, general form", criterion_contraction_general},
      {"uniqueness from random starts", criterion_uniqueness},
      {"oracle equivalence", criterion_oracles},
      {"resolvent constant", criterion_resolvent},
      {"Newtonian sweep", criterion_newtonian},
      {"Newtonian contraction scaling", criterion_newtonian_contraction},
      {"Taylor bounds", criterion_taylor},
      {"first iterate closed form", criterion_first_iterate},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("C%-2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
