// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "singreg/errors.hpp"
#include "singreg/operators.hpp"
#include "singreg/oracle.hpp"
#include "singreg/picard.hpp"
#include "singreg/resolvent.hpp"
#include "singreg/sampling.hpp"
#include "singreg/shifted_solve.hpp"
#include "singreg/theorem_constants.hpp"

namespace singreg {
namespace {

HilbertVector vec2(double a, double b) {
  Eigen::VectorXd c(2);
  c << a, b;
  return HilbertVector(c);
}

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Eigen::MatrixXd random_psd(Index n, Index rank, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd b(n, rank);
  for (Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
  return b * b.transpose() / static_cast<double>(rank);
}

TEST(TheoremConstants, ReferenceExample) {
  const TheoremConstants k = compute_theorem_constants(1.0, 1.0, 0.0, 0.1, 0.01);
  EXPECT_NEAR(k.rho, std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(k.rho, 0.774597, 1e-6);
  EXPECT_NEAR(k.r_min, 2.25403e-3, 1e-8);
  EXPECT_NEAR(k.r_max, 1.77460e-2, 1e-7);
  EXPECT_NEAR(k.q, 0.225403, 1e-6);
  EXPECT_TRUE(std::isinf(k.epsilon0));
}

TEST(TheoremConstants, DegenerateVZero) {
  const TheoremConstants k = compute_theorem_constants(1.0, 1.0, 2.0, 0.0, 0.01);
  EXPECT_EQ(k.rho, 1.0);
  EXPECT_EQ(k.r_min, 0.0);
  EXPECT_EQ(k.q, 0.0);
}

TEST(TheoremConstants, AdmissibilityViolation) {
  try {
    compute_theorem_constants(1.0, 1.0, 0.0, 0.5, 0.01);
    FAIL() << "expected AdmissibilityError";
  } catch (const AdmissibilityError& e) {
    EXPECT_DOUBLE_EQ(e.product(), 2.0);
  }
  EXPECT_THROW(compute_theorem_constants(1.0, 0.0, 0.0, 0.1, 0.01), std::invalid_argument);
  EXPECT_THROW(compute_theorem_constants(1.0, 1.0, 0.0, 0.1, -1.0), std::invalid_argument);
}

TEST(TheoremConstants, EpsilonZeroIsWhereQHitsOne) {
  const TheoremConstants k = compute_theorem_constants(1.0, 2.0, 5.0, 0.05, 1e-2);
  ASSERT_TRUE(std::isfinite(k.epsilon0));
  const TheoremConstants at = compute_theorem_constants(1.0, 2.0, 5.0, 0.05, k.epsilon0);
  EXPECT_NEAR(at.q, 1.0, 1e-12);
  EXPECT_LT(k.q, 1.0);
  // The radius window brackets the fixed radius of the self-map inequality.
  EXPECT_LT(k.r_min, k.r_max);
}

TEST(ChooseW, DiagonalAction) {
  const auto op = MatrixQuadraticOperator::linear(diag2(0.0, 1.0));
  const HilbertVector w = choose_w(op, vec2(0.3, 0.1));
  EXPECT_NEAR(w[0], 0.0, 1e-16);
  EXPECT_NEAR(w[1], -0.1, 1e-16);
  // An inadmissible v only warns.
  EXPECT_NO_THROW(choose_w(op, vec2(30.0, 10.0), WBoundCheck{1.0, 1.0}));
  EXPECT_THROW(choose_w(op, HilbertVector::zeros(3)), ShapeError);
}

TEST(ShiftedSolve, DiagonalExample) {
  const auto op = MatrixQuadraticOperator::linear(diag2(0.0, 1.0));
  const HilbertVector x = shifted_solve(op, 0.5, vec2(1.0, 1.0), op.zero());
  EXPECT_NEAR(x[0], 2.0, 1e-12);
  EXPECT_NEAR(x[1], 2.0 / 3.0, 1e-12);
}

TEST(ShiftedSolve, ZeroOperatorScales) {
  for (Index n : {1, 4, 17}) {
    const auto op = MatrixQuadraticOperator::linear(Eigen::MatrixXd::Zero(n, n));
    Rng rng(n);
    const HilbertVector b = random_gaussian(op.zero(), rng);
    const HilbertVector x = shifted_solve(op, 1e-3, b, op.zero());
    EXPECT_LE((x - 1e3 * b).coeffs().norm(), 1e-12 * 1e3 * b.coeffs().norm());
  }
}

TEST(ShiftedSolve, RandomPsdAgainstDenseFactorization) {
  Rng rng(99);
  const Eigen::MatrixXd a = random_psd(10, 6, rng);
  const auto op = MatrixQuadraticOperator::linear(a);
  const ShiftedSolver solver(op, 1e-3, op.zero());
  EXPECT_EQ(solver.path(), ShiftedSolvePath::ConjugateGradient);
  const HilbertVector b = random_gaussian(op.zero(), rng);
  const HilbertVector x = solver.solve(b);
  const Eigen::MatrixXd shifted = a + 1e-3 * Eigen::MatrixXd::Identity(10, 10);
  const Eigen::VectorXd ref = shifted.fullPivLu().solve(b.coeffs());
  EXPECT_LE((x.coeffs() - ref).norm(), 1e-8 * ref.norm());
}

TEST(ShiftedSolve, NonSymmetricUsesLu) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  const auto op = MatrixQuadraticOperator::linear(a);
  const ShiftedSolver solver(op, 0.1, op.zero());
  EXPECT_EQ(solver.path(), ShiftedSolvePath::DenseLU);
  const HilbertVector x = solver.solve(vec2(1.0, 1.0));
  const Eigen::Vector2d r = (a + 0.1 * Eigen::Matrix2d::Identity()) * x.coeffs() - Eigen::Vector2d(1.0, 1.0);
  EXPECT_LE(r.norm(), 1e-13);
  EXPECT_THROW(ShiftedSolver(op, 0.0, op.zero()), std::invalid_argument);
}

TEST(ShiftedSolve, IterationCapReportsResidual) {
  Rng rng(5);
  const auto op = MatrixQuadraticOperator::linear(random_psd(30, 30, rng));
  ShiftedSolveOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-15;
  const ShiftedSolver solver(op, 1e-6, op.zero(), opts);
  try {
    solver.solve(random_gaussian(op.zero(), rng));
    FAIL() << "expected LinearSolveError";
  } catch (const LinearSolveError& e) {
    EXPECT_GT(e.residual(), 1e-15);
  }
}

TEST(Resolvent, ZeroIdentityAndSingularDiagonal) {
  const std::vector<double> grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  const auto zero = MatrixQuadraticOperator::linear(Eigen::MatrixXd::Zero(1, 1));
  EXPECT_NEAR(estimate_resolvent_constant(zero, grid).c, 1.0, 1e-12);
  const auto id = MatrixQuadraticOperator::linear(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_NEAR(estimate_resolvent_constant(id, grid).c, 0.5, 1e-12);
  const auto d = MatrixQuadraticOperator::linear(diag2(0.0, 1.0));
  const ResolventEstimate e = estimate_resolvent_constant(d, grid);
  EXPECT_NEAR(e.c, 1.0, 1e-12);
  EXPECT_FALSE(e.low_confidence);
  ASSERT_EQ(e.scaled_norms.size(), grid.size());
}

TEST(Resolvent, DiagonalMatchesEigenFormula) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a.diagonal() << 0.5, 2.0, 1e-3, 7.0;
  const auto op = MatrixQuadraticOperator::linear(a);
  const std::vector<double> grid = {1e-2, 1e-1};
  const ResolventEstimate e = estimate_resolvent_constant(op, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double exact = grid[k] / (a.diagonal().minCoeff() + grid[k]);
    EXPECT_NEAR(e.scaled_norms[k], exact, 1e-8);
  }
}

TEST(Resolvent, NonNormalExceedsOne) {
  // A Jordan block violates the c = 1 bound; the estimator must see it.
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, 0.0, 0.0;
  const auto op = MatrixQuadraticOperator::linear(a);
  const std::vector<double> grid = {0.1};
  const ResolventEstimate e = estimate_resolvent_constant(op, grid);
  const Eigen::Matrix2d inv = (a + 0.1 * Eigen::Matrix2d::Identity()).inverse();
  const double exact = 0.1 * Eigen::JacobiSVD<Eigen::Matrix2d>(inv).singularValues()(0);
  EXPECT_NEAR(e.c, exact, 1e-8);
  EXPECT_GT(e.c, 1.0);
}

// General-form Picard.

std::shared_ptr<const OperatorModel> scalar_cubic() { return std::make_shared<ScalarCubicOperator>(); }

TEST(PicardGeneral, ScalarCubicMatchesBisection) {
  PicardOptions opts;
  opts.mode = SolveMode::Exploratory;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    RegularizationProblem p{scalar_cubic(), eps, HilbertVector(Eigen::VectorXd::Constant(1, eps))};
    const SolveReport r = picard_solve_general(p, std::nullopt, opts);
    ASSERT_TRUE(r.converged) << "eps = " << eps;
    const auto root = oracle::scalar_bisection(
        [eps](double u) { return u * u * u + eps * u - eps * eps; }, 0.0, 1.0, 1e-15);
    EXPECT_LE(std::abs(r.solution[0] - root.scalar()), 1e-10) << "eps = " << eps;
  }
}

TEST(PicardGeneral, WEqualsYGivesZeroInOneIteration) {
  const auto op = std::make_shared<MatrixQuadraticOperator>(MatrixQuadraticOperator::planar_test_family());
  const double eps = 1e-2;
  const TheoremConstants k = compute_theorem_constants(1.0, std::sqrt(2.0), 0.0, 0.0, eps);
  RegularizationProblem p{op, eps, op->base_point()};
  const SolveReport r = picard_solve_general(p, k);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.solution.is_zero());
}

class PlanarCertified : public ::testing::Test {
 protected:
  void SetUp() override {
    op_ = std::make_shared<MatrixQuadraticOperator>(MatrixQuadraticOperator::planar_test_family());
    v_ = vec2(0.05, 0.1);
    w_ = choose_w(*op_, v_);
  }
  TheoremConstants constants(double eps) const {
    return compute_theorem_constants(1.0, std::sqrt(2.0), 0.0, norm(v_, NormKind::L2), eps);
  }
  RegularizationProblem problem(double eps) const { return {op_, eps, w_}; }

  std::shared_ptr<const MatrixQuadraticOperator> op_;
  HilbertVector v_;
  HilbertVector w_;
};

TEST_F(PlanarCertified, ContractionAndNewtonAgreement) {
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const TheoremConstants k = constants(eps);
    const SolveReport r = picard_solve_general(problem(eps), k);
    ASSERT_TRUE(r.converged);
    EXPECT_FALSE(r.exited_ball);
    EXPECT_LE(r.max_step_ratio(), k.q + 0.05);
    EXPECT_DOUBLE_EQ(r.ball_radius_used, k.r_min);
    const auto newton = oracle::dense_newton(*op_, eps, w_, op_->zero(), 1e-13);
    ASSERT_TRUE(newton.certified);
    EXPECT_LE((r.solution - newton.vector()).coeffs().norm(), 1e-8);
    // residual contract
    const HilbertVector res = op_->evaluate(r.solution) + eps * (r.solution - w_);
    EXPECT_LE(norm(res, NormKind::L2), 1e-10);
    ASSERT_EQ(r.residual_history.size(), static_cast<std::size_t>(r.iterations) + 1);
  }
}

TEST_F(PlanarCertified, UniqueAcrossRandomStarts) {
  const double eps = 1e-2;
  const TheoremConstants k = constants(eps);
  Rng rng(42);
  std::vector<HilbertVector> sols;
  for (int s = 0; s < 5; ++s) {
    PicardOptions opts;
    opts.start = scaled_to_norm(random_gaussian(op_->zero(), rng), random_ball_radius(k.r_min, 2, rng), NormKind::L2);
    sols.push_back(picard_solve_general(problem(eps), k, opts).solution);
  }
  for (const auto& a : sols)
    for (const auto& b : sols) EXPECT_LE((a - b).coeffs().norm(), 1e-9);
}

TEST_F(PlanarCertified, Preconditions) {
  const double eps = 1e-2;
  EXPECT_THROW(picard_solve_general(problem(eps), std::nullopt), PreconditionError);
  EXPECT_THROW(picard_solve_general(problem(eps), constants(2e-2)), PreconditionError);
  PicardOptions outside;
  outside.start = vec2(1.0, 0.0);
  EXPECT_THROW(picard_solve_general(problem(eps), constants(eps), outside), BallExitError);
  outside.mode = SolveMode::Exploratory;
  const SolveReport r = picard_solve_general(problem(eps), constants(eps), outside);
  EXPECT_GT(r.ball_violations, 0);
}

TEST_F(PlanarCertified, IterationCapIsNotAnException) {
  PicardOptions opts;
  opts.tolerances.max_iterations = 1;
  const SolveReport r = picard_solve_general(problem(1e-2), constants(1e-2), opts);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::MaxIterations);
  EXPECT_EQ(r.iterations, 1);
}

TEST(SolveMode, ParseRoundTrip) {
  EXPECT_EQ(parse_solve_mode("certified"), SolveMode::Certified);
  EXPECT_EQ(parse_solve_mode(to_string(SolveMode::Exploratory)), SolveMode::Exploratory);
  EXPECT_THROW(parse_solve_mode("hard"), std::invalid_argument);
}

}  // namespace
}  // namespace singreg
