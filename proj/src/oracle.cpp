// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "singreg/errors.hpp"

namespace singreg::oracle {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Bisection: return "bisection";
    case Method::Newton: return "newton";
    case Method::RefinedQuadrature: return "refined_quadrature";
  }
  return "?";
}

OracleResult scalar_bisection(const std::function<double(double)>& f, double lo, double hi,
                              double tol) {
  if (!(lo < hi)) throw std::invalid_argument("scalar_bisection: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("scalar_bisection: need tol > 0");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, Method::Bisection, true, 0};
  if (f_hi == 0.0) return {hi, 0.0, Method::Bisection, true, 0};
  if (!(f_lo * f_hi < 0.0)) {
    throw BracketError("scalar_bisection: f(lo) and f(hi) have the same sign");
  }
  int it = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    const double f_mid = f(mid);
    ++it;
    if (f_mid == 0.0) return {mid, 0.0, Method::Bisection, true, it};
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), hi - lo, Method::Bisection, true, it};
}

namespace {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting on a copy of `a`.
std::vector<double> gauss_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0 || std::abs(a[pivot][col]) <= 1e-14 * scale) {
      throw SingularJacobianError("dense_newton: singular Jacobian at column " +
                                  std::to_string(col));
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

double residual_norm(const OperatorModel& op, double eps, const HilbertVector& w,
                     const HilbertVector& u, NormKind kind) {
  return norm(op.evaluate(u) + eps * (u - w), kind);
}

}  // namespace

OracleResult dense_newton(const OperatorModel& op, double epsilon, const HilbertVector& w,
                          const HilbertVector& start, double tol, const NewtonOptions& options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("dense_newton: eps must be > 0");
  op.require_in_space(w, "dense_newton");
  op.require_in_space(start, "dense_newton");
  const Index n = op.dimension();
  if (n > options.dimension_limit) {
    throw PreconditionError("dense_newton: dimension " + std::to_string(n) +
                            " exceeds the oracle limit");
  }

  HilbertVector u = start;
  double res = residual_norm(op, epsilon, w, u, options.norm);
  OracleResult out;
  out.method = Method::Newton;
  int it = 0;
  for (; it < options.max_iterations && res > tol; ++it) {
    const HilbertVector g = op.evaluate(u) + epsilon * (u - w);
    Matrix jac(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (Index j = 0; j < n; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = 1.0;
      const HilbertVector col = op.derivative_apply(u, u.with_coeffs(std::move(e)));
      for (Index i = 0; i < n; ++i) jac[i][j] = col[i] + (i == j ? epsilon : 0.0);
    }
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) rhs[i] = -g[i];
    const std::vector<double> delta = gauss_solve(std::move(jac), std::move(rhs));
    Eigen::VectorXd d(n);
    for (Index i = 0; i < n; ++i) d[i] = delta[i];
    const HilbertVector step = u.with_coeffs(std::move(d));

    double lambda = 1.0;
    HilbertVector trial = u + step;
    double trial_res = residual_norm(op, epsilon, w, trial, options.norm);
    int halvings = 0;
    while (trial_res > res && halvings < options.max_halvings) {
      lambda *= 0.5;
      trial = u + lambda * step;
      trial_res = residual_norm(op, epsilon, w, trial, options.norm);
      ++halvings;
    }
    if (trial_res > res) break;  // no descent; report as non-certified
    const bool stalled = trial_res == res;
    u = std::move(trial);
    res = trial_res;
    if (stalled) {
      ++it;
      break;
    }
  }
  out.value = u;
  out.certified_error = res;
  out.certified = res <= tol;
  out.iterations = it;
  return out;
}

namespace {

double midpoint_potential(const GridDomain& domain,
                          const std::function<double(const Point3&)>& density, const Point3& x,
                          int refinement) {
  const auto& p = domain.points();
  const auto& lo = domain.lower();
  std::array<int, 3> cells{};
  std::array<double, 3> h{};
  for (int a = 0; a < 3; ++a) {
    cells[a] = (p[a] - 1) * refinement;
    h[a] = domain.edges()[a] / cells[a];
  }
  const double cell = h[0] * h[1] * h[2];
  double total = 0.0;
  for (int k = 0; k < cells[2]; ++k) {
    const double sz = lo[2] + (k + 0.5) * h[2];
    for (int j = 0; j < cells[1]; ++j) {
      const double sy = lo[1] + (j + 0.5) * h[1];
      double row = 0.0;
      for (int i = 0; i < cells[0]; ++i) {
        const Point3 s{lo[0] + (i + 0.5) * h[0], sy, sz};
        const double dx = x[0] - s[0];
        const double dy = x[1] - s[1];
        const double dz = x[2] - s[2];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (r == 0.0) continue;  // measure zero; only hit when x is a cell center
        row += density(s) / r;
      }
      total += row;
    }
  }
  return total * cell / (4.0 * std::numbers::pi);
}

}  // namespace

OracleResult refined_quadrature(const GridDomain& domain,
                                const std::function<double(const Point3&)>& density,
                                const Point3& x, int refinement) {
  if (refinement < 2) throw std::invalid_argument("refined_quadrature: refinement must be >= 2");
  for (int a = 0; a < 3; ++a) {
    if ((domain.points()[a] - 1) * refinement > 64) {
      throw std::length_error("refined_quadrature: refined grid exceeds 64 cells per axis");
    }
  }
  const int coarse = refinement / 2;
  const double fine_value = midpoint_potential(domain, density, x, refinement);
  const double coarse_value = midpoint_potential(domain, density, x, coarse);
  // Second-order rule. The estimate is the Richardson error of the coarse
  // level, which also bounds the fine one when the singular cell degrades
  // the order.
  const double ratio = static_cast<double>(refinement) / coarse;
  const double estimate = std::abs(fine_value - coarse_value) * ratio * ratio / (ratio * ratio - 1.0);
  return {fine_value, estimate, Method::RefinedQuadrature, true, 2};
}

}  // namespace singreg::oracle
