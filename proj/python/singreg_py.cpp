// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "singreg/config.hpp"
#include "singreg/errors.hpp"
#include "singreg/experiment.hpp"
#include "singreg/newtonian.hpp"
#include "singreg/operators.hpp"
#include "singreg/oracle.hpp"
#include "singreg/picard.hpp"
#include "singreg/rate_fit.hpp"
#include "singreg/resolvent.hpp"
#include "singreg/shifted_solve.hpp"
#include "singreg/theorem_constants.hpp"

namespace py = pybind11;
using namespace singreg;

namespace {

using OperatorPtr = std::shared_ptr<OperatorModel>;

HilbertVector in_space(const OperatorModel& op, const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != op.dimension()) {
    throw ShapeError("expected " + std::to_string(op.dimension()) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  }
  return op.zero().with_coeffs(coeffs);
}

HilbertVector on_grid(const std::optional<GridDomain>& grid, const Eigen::VectorXd& coeffs) {
  if (!grid) return HilbertVector(coeffs);
  return HilbertVector(std::make_shared<const GridDomain>(*grid), coeffs);
}

NormKind norm_of(const OperatorModel& op, const std::optional<std::string>& kind) {
  return kind ? parse_norm_kind(*kind) : op.natural_norm();
}

PicardOptions make_options(const OperatorModel& op, const std::string& mode,
                           const std::optional<Eigen::VectorXd>& start, bool record) {
  PicardOptions o;
  o.mode = parse_solve_mode(mode);
  if (start) o.start = in_space(op, *start);
  o.record_iterates = record;
  return o;
}

py::dict sweep_to_dict(const SweepResult& r) {
  py::list rows;
  for (const SweepRow& row : r.rows) {
    py::dict d;
    d["epsilon"] = row.epsilon;
    d["norm_solution"] = row.norm_solution;
    d["iterations"] = row.iterations;
    d["final_residual"] = row.final_residual;
    d["max_step_ratio"] = row.max_step_ratio;
    d["ball_radius"] = row.ball_radius;
    d["exited_ball"] = row.exited_ball;
    d["converged"] = row.converged;
    rows.append(d);
  }
  py::dict out;
  out["rows"] = rows;
  out["rate_fit"] = r.rate_fit ? py::cast(*r.rate_fit) : py::none();
  out["contraction_fit"] = r.contraction_fit ? py::cast(*r.contraction_fit) : py::none();
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  out["csv"] = csv.str();
  return out;
}

}  // namespace

PYBIND11_MODULE(singreg, m) {
  m.doc() = "Regularized fixed-point solvers for F(u) + eps (u - w) = 0 with singular F'(y).";

  auto base = py::register_exception<Error>(m, "SingregError", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<NonFiniteError>(m, "NonFiniteError", base);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", precondition);
  py::register_exception<LinearSolveError>(m, "LinearSolveError", base);
  py::register_exception<BallExitError>(m, "BallExitError", base);
  py::register_exception<BracketError>(m, "BracketError", base);
  py::register_exception<SingularJacobianError>(m, "SingularJacobianError", base);
  py::register_exception<NoFitError>(m, "NoFitError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  py::class_<GridDomain>(m, "GridDomain")
      .def(py::init<Point3, Point3, std::array<int, 3>>(), py::arg("lower"), py::arg("edges"),
           py::arg("points"))
      .def_static("unit_cube", &GridDomain::unit_cube, py::arg("points_per_axis"))
      .def_property_readonly("size", &GridDomain::size)
      .def_property_readonly("points", &GridDomain::points)
      .def_property_readonly("spacing", &GridDomain::spacing)
      .def_property_readonly("weights", &GridDomain::weights)
      .def("nodes", [](const GridDomain& g) {
        Eigen::MatrixXd out(g.size(), 3);
        for (Index n = 0; n < g.size(); ++n) {
          const Point3 x = g.node(n);
          out.row(n) << x[0], x[1], x[2];
        }
        return out;
      });

  m.def("norm",
        [](const Eigen::VectorXd& u, const std::string& kind, const std::optional<GridDomain>& grid) {
          return norm(on_grid(grid, u), parse_norm_kind(kind));
        },
        py::arg("u"), py::arg("kind") = "L2", py::arg("grid") = py::none());
  m.def("inner_product",
        [](const Eigen::VectorXd& u, const Eigen::VectorXd& v, const std::string& kind,
           const std::optional<GridDomain>& grid) {
          return inner_product(on_grid(grid, u), on_grid(grid, v), parse_norm_kind(kind));
        },
        py::arg("u"), py::arg("v"), py::arg("kind") = "L2", py::arg("grid") = py::none());

  py::class_<OperatorModel, OperatorPtr>(m, "Operator")
      .def_property_readonly("dimension", &OperatorModel::dimension)
      .def_property_readonly("natural_norm",
                             [](const OperatorModel& op) { return std::string(to_string(op.natural_norm())); })
      .def("evaluate",
           [](const OperatorModel& op, const Eigen::VectorXd& u) {
             return op.evaluate(in_space(op, u)).coeffs();
           })
      .def("derivative_apply",
           [](const OperatorModel& op, const Eigen::VectorXd& u, const Eigen::VectorXd& psi) {
             return op.derivative_apply(in_space(op, u), in_space(op, psi)).coeffs();
           })
      .def("taylor_remainder",
           [](const OperatorModel& op, const Eigen::VectorXd& z) {
             return taylor_remainder(op, in_space(op, z)).coeffs();
           })
      .def("jacobian", [](const OperatorModel& op, const std::optional<Eigen::VectorXd>& at) {
        return op.materialize_jacobian(at ? in_space(op, *at) : op.base_point());
      }, py::arg("at") = py::none());

  m.def("planar_test_family", []() -> OperatorPtr {
    return std::make_shared<MatrixQuadraticOperator>(MatrixQuadraticOperator::planar_test_family());
  });
  m.def("linear_operator", [](const Eigen::MatrixXd& a) -> OperatorPtr {
    return std::make_shared<MatrixQuadraticOperator>(MatrixQuadraticOperator::linear(a));
  }, py::arg("matrix"));
  m.def("matrix_quadratic",
        [](const Eigen::MatrixXd& a, const std::vector<Eigen::MatrixXd>& q,
           std::optional<double> m2) -> OperatorPtr {
          return std::make_shared<MatrixQuadraticOperator>(a, q, m2);
        },
        py::arg("linear"), py::arg("quadratic"), py::arg("m2") = py::none());
  m.def("scalar_cubic", []() -> OperatorPtr { return std::make_shared<ScalarCubicOperator>(); });
  m.def("newtonian_cubic",
        [](const GridDomain& grid, const std::optional<Eigen::VectorXd>& shift) -> OperatorPtr {
          return std::make_shared<NewtonianCubicOperator>(grid, shift.value_or(Eigen::VectorXd{}));
        },
        py::arg("grid"), py::arg("shift") = py::none());

  py::class_<DerivativeBounds>(m, "DerivativeBounds")
      .def_readonly("m2", &DerivativeBounds::m2)
      .def_readonly("m3", &DerivativeBounds::m3)
      .def_readonly("analytic", &DerivativeBounds::analytic);
  m.def("estimate_derivative_bounds",
        [](const OperatorModel& op, double radius, int samples, std::uint64_t seed, bool use_analytic) {
          BoundEstimateOptions o;
          o.samples = samples;
          o.seed = seed;
          o.use_analytic = use_analytic;
          return estimate_derivative_bounds(op, radius, o);
        },
        py::arg("op"), py::arg("radius"), py::arg("samples") = 64, py::arg("seed") = 0x5eed,
        py::arg("use_analytic") = true);

  py::class_<TheoremConstants>(m, "TheoremConstants")
      .def_readonly("c", &TheoremConstants::c)
      .def_readonly("m2", &TheoremConstants::m2)
      .def_readonly("m3", &TheoremConstants::m3)
      .def_readonly("v_norm", &TheoremConstants::v_norm)
      .def_readonly("epsilon", &TheoremConstants::epsilon)
      .def_readonly("rho", &TheoremConstants::rho)
      .def_readonly("r_min", &TheoremConstants::r_min)
      .def_readonly("r_max", &TheoremConstants::r_max)
      .def_readonly("q", &TheoremConstants::q)
      .def_readonly("epsilon0", &TheoremConstants::epsilon0);
  m.def("compute_theorem_constants", &compute_theorem_constants, py::arg("c"), py::arg("m2"),
        py::arg("m3"), py::arg("v_norm"), py::arg("epsilon"));
  m.def("choose_w",
        [](const OperatorModel& op, const Eigen::VectorXd& v) { return choose_w(op, in_space(op, v)).coeffs(); },
        py::arg("op"), py::arg("v"));

  m.def("shifted_solve",
        [](const OperatorModel& op, double eps, const Eigen::VectorXd& b,
           const std::optional<Eigen::VectorXd>& at) {
          const HilbertVector point = at ? in_space(op, *at) : op.base_point();
          return shifted_solve(op, eps, in_space(op, b), point).coeffs();
        },
        py::arg("op"), py::arg("epsilon"), py::arg("b"), py::arg("at") = py::none());

  py::class_<ResolventEstimate>(m, "ResolventEstimate")
      .def_readonly("c", &ResolventEstimate::c)
      .def_readonly("epsilons", &ResolventEstimate::epsilons)
      .def_readonly("scaled_norms", &ResolventEstimate::scaled_norms)
      .def_readonly("low_confidence", &ResolventEstimate::low_confidence);
  m.def("estimate_resolvent_constant",
        [](const OperatorModel& op, const std::vector<double>& eps) {
          return estimate_resolvent_constant(op, eps);
        },
        py::arg("op"), py::arg("epsilons"));

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("solution", [](const SolveReport& r) { return r.solution.coeffs(); })
      .def_property_readonly("correction", [](const SolveReport& r) { return r.correction.coeffs(); })
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("residual_history", &SolveReport::residual_history)
      .def_readonly("step_ratio_history", &SolveReport::step_ratio_history)
      .def_readonly("iterate_norms", &SolveReport::iterate_norms)
      .def_property_readonly("iterates",
                             [](const SolveReport& r) {
                               std::vector<Eigen::VectorXd> out;
                               for (const auto& v : r.iterates) out.push_back(v.coeffs());
                               return out;
                             })
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("converged", &SolveReport::converged)
      .def_property_readonly("stop_reason",
                             [](const SolveReport& r) { return std::string(to_string(r.stop_reason)); })
      .def_readonly("ball_radius", &SolveReport::ball_radius_used)
      .def_readonly("exited_ball", &SolveReport::exited_ball)
      .def_readonly("contraction_bound", &SolveReport::contraction_bound)
      .def_property_readonly("max_step_ratio", &SolveReport::max_step_ratio);

  m.def("solve_general",
        [](const OperatorPtr& op, double eps, const Eigen::VectorXd& w,
           const std::optional<TheoremConstants>& constants, const std::string& mode,
           const std::optional<Eigen::VectorXd>& start, const std::optional<std::string>& norm_kind,
           bool record) {
          const RegularizationProblem p{op, eps, in_space(*op, w), norm_of(*op, norm_kind)};
          return picard_solve_general(p, constants, make_options(*op, mode, start, record));
        },
        py::arg("op"), py::arg("epsilon"), py::arg("w"), py::arg("constants") = py::none(),
        py::arg("mode") = "certified", py::arg("start") = py::none(), py::arg("norm") = py::none(),
        py::arg("record_iterates") = false);

  py::class_<CubicFormConstants>(m, "CubicFormConstants")
      .def_readonly("c1", &CubicFormConstants::c1)
      .def_readonly("c2", &CubicFormConstants::c2)
      .def_readonly("epsilon0", &CubicFormConstants::epsilon0);
  m.def("estimate_cubic_form_constants",
        [](const OperatorModel& op, int samples, std::uint64_t seed) {
          CubicConstantOptions o;
          o.samples = samples;
          o.seed = seed;
          return estimate_cubic_form_constants(op, o);
        },
        py::arg("op"), py::arg("samples") = 64, py::arg("seed") = 0xc0be);
  m.def("solve_newtonian",
        [](const OperatorModel& op, double eps, const Eigen::VectorXd& h,
           const std::optional<CubicFormConstants>& constants, const std::string& mode,
           const std::optional<Eigen::VectorXd>& start, bool record) {
          return picard_solve_newtonian(op, eps, in_space(op, h), constants,
                                        make_options(op, mode, start, record));
        },
        py::arg("op"), py::arg("epsilon"), py::arg("h"), py::arg("constants") = py::none(),
        py::arg("mode") = "certified", py::arg("start") = py::none(), py::arg("record_iterates") = false);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope", &RateFit::slope)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("r_squared", &RateFit::r_squared)
      .def_readonly("points", &RateFit::points)
      .def("__repr__", [](const RateFit& f) {
        return "RateFit(slope=" + format_real(f.slope) + ", r_squared=" + format_real(f.r_squared) +
               ", points=" + std::to_string(f.points) + ")";
      });
  m.def("fit_rate",
        [](const std::vector<double>& eps, const std::vector<double>& values) {
          if (eps.size() != values.size()) throw ShapeError("fit_rate: length mismatch");
          std::vector<std::pair<double, double>> pairs;
          for (std::size_t i = 0; i < eps.size(); ++i) pairs.emplace_back(eps[i], values[i]);
          return fit_rate(pairs);
        },
        py::arg("epsilons"), py::arg("values"));

  m.def("scalar_bisection",
        [](const std::function<double(double)>& f, double lo, double hi, double tol) {
          const auto r = oracle::scalar_bisection(f, lo, hi, tol);
          return py::make_tuple(r.scalar(), r.certified_error);
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol"));
  m.def("dense_newton",
        [](const OperatorModel& op, double eps, const Eigen::VectorXd& w,
           const std::optional<Eigen::VectorXd>& start, double tol) {
          const HilbertVector s = start ? in_space(op, *start) : op.base_point();
          const auto r = oracle::dense_newton(op, eps, in_space(op, w), s, tol);
          return py::make_tuple(r.vector().coeffs(), r.certified_error, r.certified);
        },
        py::arg("op"), py::arg("epsilon"), py::arg("w"), py::arg("start") = py::none(),
        py::arg("tol") = 1e-12);

  m.def("run_sweep",
        [](const std::string& config_json) {
          const ExperimentConfig cfg = parse_config(config_json);
          SweepResult r;
          {
            py::gil_scoped_release release;
            r = run_sweep(cfg);
          }
          return sweep_to_dict(r);
        },
        py::arg("config_json"));
  m.def("verify",
        [](const std::string& config_json) {
          py::list out;
          for (const VerifyEntry& e : verify(parse_config(config_json))) {
            py::dict d;
            d["epsilon"] = e.epsilon;
            d["distance"] = e.distance;
            d["tolerance"] = e.tolerance;
            d["method"] = std::string(oracle::to_string(e.method));
            d["oracle_ok"] = e.oracle_ok;
            d["message"] = e.oracle_message;
            d["pass"] = e.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("config_json"));
}
