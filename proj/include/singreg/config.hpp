// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "singreg/grid.hpp"
#include "singreg/norms.hpp"
#include "singreg/operator.hpp"
#include "singreg/picard.hpp"

namespace singreg {

inline constexpr int kConfigSchemaVersion = 1;

enum class ProblemKind { NewtonianCubic, MatrixQuadratic, ScalarCubic };

std::string_view to_string(ProblemKind kind) noexcept;

struct ProblemSpec {
  ProblemKind kind = ProblemKind::MatrixQuadratic;

  // matrix_quadratic
  Eigen::MatrixXd linear;
  std::vector<Eigen::MatrixXd> quadratic;
  std::optional<double> m2;
  /// w = y - F'(y) v.
  Eigen::VectorXd v;
  /// Resolvent constant; derived from the operator when absent.
  std::optional<double> c;

  // newtonian_cubic
  std::optional<GridDomain> grid;
  /// "constant" or "smooth"
  std::string h_profile = "constant";
  std::uint64_t h_seed = 7;

  // scalar_cubic
  double h_scalar = 1.0;
};

struct ConstantsInput {
  double c = 1.0;
  double m2 = 1.0;
  double m3 = 0.0;
  double v_norm = 0.0;
  double epsilon = 1e-2;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  ProblemSpec problem;
  /// Strictly positive, distinct, sorted descending.
  std::vector<double> epsilons;
  SolveMode mode = SolveMode::Certified;
  SolverTolerances tolerances;
  std::optional<NormKind> norm;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Sample count for the c1/c2 and M2/M3 estimators.
  int samples = 64;

  std::vector<double> resolvent_epsilons;
  double resolvent_bound = 1.0 + 1e-8;

  std::optional<ConstantsInput> constants;
};

/// Eight points log-spaced over [1e-4, 1e-1].
std::vector<double> default_epsilon_grid();
std::vector<double> log_spaced(double lo, double hi, int count);

/// Parses a JSON document; throws ConfigError with a message naming the
/// offending field.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks the epsilon list, sorts it descending.
void normalize_epsilons(std::vector<double>& epsilons);

std::shared_ptr<const OperatorModel> build_operator(const ProblemSpec& spec);

}  // namespace singreg
