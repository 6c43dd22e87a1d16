// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "singreg/errors.hpp"
#include "singreg/newtonian.hpp"
#include "singreg/operators.hpp"

namespace singreg {

using nlohmann::json;

std::string_view to_string(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::NewtonianCubic: return "newtonian_cubic";
    case ProblemKind::MatrixQuadratic: return "matrix_quadratic";
    case ProblemKind::ScalarCubic: return "scalar_cubic";
  }
  return "?";
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ConfigError("log_spaced: need 0 < min < max and count >= 2");
  }
  std::vector<double> out;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (count - 1)));
  return out;
}

std::vector<double> default_epsilon_grid() { return log_spaced(1e-4, 1e-1, 8); }

void normalize_epsilons(std::vector<double>& epsilons) {
  if (epsilons.empty()) throw ConfigError("epsilon list is empty");
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("epsilon values must be finite and > 0");
  }
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  if (std::adjacent_find(epsilons.begin(), epsilons.end()) != epsilons.end()) {
    throw ConfigError("epsilon values must be distinct");
  }
}

namespace {

Eigen::MatrixXd to_matrix(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(field) + ": expected a nonempty matrix");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ConfigError(std::string(field) + ": ragged matrix");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

Eigen::VectorXd to_vector(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string(field) + ": expected an array");
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
  return v;
}

template <class T, std::size_t N>
std::array<T, N> to_array(const json& j, const char* field) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(std::string(field) + ": expected " + std::to_string(N) + " entries");
  }
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<T>();
  return out;
}

GridDomain parse_grid(const json& g) {
  if (g.contains("points_per_axis")) {
    const int n = g.at("points_per_axis").get<int>();
    const Point3 lower = g.contains("lower") ? to_array<double, 3>(g.at("lower"), "grid.lower")
                                             : Point3{0.0, 0.0, 0.0};
    const Point3 edges = g.contains("edges") ? to_array<double, 3>(g.at("edges"), "grid.edges")
                                             : Point3{1.0, 1.0, 1.0};
    return GridDomain(lower, edges, {n, n, n});
  }
  return GridDomain(to_array<double, 3>(g.at("lower"), "grid.lower"),
                    to_array<double, 3>(g.at("edges"), "grid.edges"),
                    to_array<int, 3>(g.at("points"), "grid.points"));
}

ProblemSpec parse_problem(const json& p) {
  ProblemSpec spec;
  const std::string kind = p.at("kind").get<std::string>();
  if (kind == "matrix_quadratic") {
    spec.kind = ProblemKind::MatrixQuadratic;
    if (p.value("preset", std::string()) == "planar") {
      const auto op = MatrixQuadraticOperator::planar_test_family();
      spec.linear = op.linear_part();
      spec.quadratic = op.quadratic_part();
    } else {
      spec.linear = to_matrix(p.at("linear"), "problem.linear");
      if (p.contains("quadratic")) {
        for (const auto& q : p.at("quadratic")) spec.quadratic.push_back(to_matrix(q, "problem.quadratic"));
      }
    }
    if (p.contains("m2")) spec.m2 = p.at("m2").get<double>();
    spec.v = p.contains("v") ? to_vector(p.at("v"), "problem.v")
                             : Eigen::VectorXd::Zero(spec.linear.rows());
    if (spec.v.size() != spec.linear.rows()) throw ConfigError("problem.v: wrong dimension");
  } else if (kind == "newtonian_cubic") {
    spec.kind = ProblemKind::NewtonianCubic;
    spec.grid = parse_grid(p.at("grid"));
    spec.h_profile = p.value("h", std::string("constant"));
    if (spec.h_profile != "constant" && spec.h_profile != "smooth") {
      throw ConfigError("problem.h: expected \"constant\" or \"smooth\"");
    }
    spec.h_seed = p.value("h_seed", spec.h_seed);
  } else if (kind == "scalar_cubic") {
    spec.kind = ProblemKind::ScalarCubic;
    spec.h_scalar = p.value("h", 1.0);
  } else {
    throw ConfigError("problem.kind: unknown kind '" + kind + "'");
  }
  if (p.contains("c")) spec.c = p.at("c").get<double>();
  return spec;
}

std::vector<double> parse_epsilons(const json& doc, const char* list_key, const char* range_key) {
  if (doc.contains(list_key)) return doc.at(list_key).get<std::vector<double>>();
  if (doc.contains(range_key)) {
    const json& r = doc.at(range_key);
    return log_spaced(r.at("min").get<double>(), r.at("max").get<double>(), r.at("count").get<int>());
  }
  return {};
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  ExperimentConfig cfg;
  try {
    const json doc = json::parse(json_text);
    cfg.schema_version = doc.at("schema_version").get<int>();
    if (cfg.schema_version != kConfigSchemaVersion) {
      throw ConfigError("schema_version " + std::to_string(cfg.schema_version) +
                        " is not supported (expected " + std::to_string(kConfigSchemaVersion) + ")");
    }
    if (doc.contains("problem")) cfg.problem = parse_problem(doc.at("problem"));

    cfg.epsilons = parse_epsilons(doc, "epsilons", "epsilon_range");
    if (cfg.epsilons.empty()) cfg.epsilons = default_epsilon_grid();
    normalize_epsilons(cfg.epsilons);

    if (doc.contains("mode")) cfg.mode = parse_solve_mode(doc.at("mode").get<std::string>());
    if (doc.contains("norm")) cfg.norm = parse_norm_kind(doc.at("norm").get<std::string>());
    if (doc.contains("tolerances")) {
      const json& t = doc.at("tolerances");
      cfg.tolerances.step = t.value("step", cfg.tolerances.step);
      cfg.tolerances.residual = t.value("residual", cfg.tolerances.residual);
      cfg.tolerances.linear = t.value("linear", cfg.tolerances.linear);
      cfg.tolerances.max_iterations = t.value("max_iterations", cfg.tolerances.max_iterations);
    }
    cfg.output = doc.value("output", std::string());
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.threads = doc.value("threads", cfg.threads);
    cfg.samples = doc.value("samples", cfg.samples);
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");

    if (doc.contains("resolvent")) {
      const json& r = doc.at("resolvent");
      cfg.resolvent_epsilons = parse_epsilons(r, "epsilons", "epsilon_range");
      cfg.resolvent_bound = r.value("bound", cfg.resolvent_bound);
    }
    if (cfg.resolvent_epsilons.empty()) cfg.resolvent_epsilons = cfg.epsilons;
    normalize_epsilons(cfg.resolvent_epsilons);

    if (doc.contains("constants")) {
      const json& k = doc.at("constants");
      ConstantsInput in;
      in.c = k.value("c", in.c);
      in.m2 = k.value("m2", in.m2);
      in.m3 = k.value("m3", in.m3);
      in.v_norm = k.value("v_norm", in.v_norm);
      in.epsilon = k.value("epsilon", in.epsilon);
      cfg.constants = in;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::shared_ptr<const OperatorModel> build_operator(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::MatrixQuadratic:
      return std::make_shared<MatrixQuadraticOperator>(spec.linear, spec.quadratic, spec.m2);
    case ProblemKind::NewtonianCubic:
      if (!spec.grid) throw ConfigError("newtonian_cubic needs a grid");
      return std::make_shared<NewtonianCubicOperator>(*spec.grid);
    case ProblemKind::ScalarCubic:
      return std::make_shared<ScalarCubicOperator>();
  }
  throw ConfigError("unknown problem kind");
}

}  // namespace singreg
