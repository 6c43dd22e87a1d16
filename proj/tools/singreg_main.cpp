// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: sweep, solve, certify-resolvent, verify, constants.
//
// Exit codes: 0 success, 1 precondition violation, 2 low-confidence estimate,
// 3 oracle failure, 4 I/O or config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "singreg/config.hpp"
#include "singreg/errors.hpp"
#include "singreg/experiment.hpp"
#include "singreg/theorem_constants.hpp"

namespace {

using namespace singreg;

enum ExitCode : int {
  kOk = 0,
  kPrecondition = 1,
  kLowConfidence = 2,
  kOracleFailure = 3,
  kIoError = 4,
};

struct CommonFlags {
  std::string config;
  std::string mode;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
  auto* opt = cmd->add_option("--config", flags.config, "JSON experiment config");
  if (needs_config) opt->required();
  cmd->add_option("--mode", flags.mode, "certified | exploratory")
      ->check(CLI::IsMember({"certified", "exploratory"}));
  cmd->add_option("--out", flags.out, "output path");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--threads", flags.threads, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig load(const CommonFlags& flags) {
  ExperimentConfig cfg = load_config(flags.config);
  if (!flags.mode.empty()) cfg.mode = parse_solve_mode(flags.mode);
  if (!flags.out.empty()) cfg.output = flags.out;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.threads) cfg.threads = *flags.threads;
  return cfg;
}

// Writes to cfg.output when set, otherwise to stdout.
template <class Writer>
void emit(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  writer(file);
  if (!file) throw ConfigError("failed writing '" + path + "'");
}

int run_sweep_cmd(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  const SweepResult result = run_sweep(cfg);
  emit(cfg.output, [&](std::ostream& os) { write_sweep_csv(os, result); });
  write_sweep_summary(cfg.output.empty() ? std::cerr : std::cout, result);
  return kOk;
}

int run_solve_cmd(const CommonFlags& flags, std::optional<double> epsilon) {
  const ExperimentConfig cfg = load(flags);
  const PreparedProblem problem = prepare_problem(cfg);
  const double eps = epsilon.value_or(cfg.epsilons.front());
  const SolveReport rep = solve_at(problem, eps);

  std::ostream& info = cfg.output.empty() ? std::cerr : std::cout;
  info << "epsilon         " << format_real(eps) << '\n'
       << "mode            " << to_string(rep.mode) << '\n'
       << "iterations      " << rep.iterations << '\n'
       << "stop            " << to_string(rep.stop_reason) << '\n'
       << "converged       " << (rep.converged ? "yes" : "no") << '\n'
       << "final_residual  " << format_real(rep.final_residual) << '\n'
       << "norm_solution   " << format_real(norm(rep.correction, problem.norm)) << '\n'
       << "ball_radius     " << format_real(rep.ball_radius_used) << '\n'
       << "exited_ball     " << (rep.exited_ball ? "yes" : "no") << '\n'
       << "max_step_ratio  " << format_real(rep.max_step_ratio()) << '\n'
       << "contraction     " << format_real(rep.contraction_bound) << '\n';
  emit(cfg.output, [&](std::ostream& os) {
    os << "index,value\n";
    for (Index i = 0; i < rep.solution.size(); ++i) os << i << ',' << format_real(rep.solution[i]) << '\n';
  });
  return rep.converged ? kOk : kPrecondition;
}

int run_certify_cmd(const CommonFlags& flags, std::optional<double> bound) {
  ExperimentConfig cfg = load(flags);
  if (bound) cfg.resolvent_bound = *bound;
  const ResolventCertification cert = certify_resolvent(cfg);
  emit(cfg.output, [&](std::ostream& os) {
    os << "epsilon,scaled_resolvent_norm,iterations\n";
    for (std::size_t i = 0; i < cert.estimate.epsilons.size(); ++i) {
      os << format_real(cert.estimate.epsilons[i]) << ',' << format_real(cert.estimate.scaled_norms[i])
         << ',' << cert.estimate.iterations[i] << '\n';
    }
  });
  std::ostream& info = cfg.output.empty() ? std::cerr : std::cout;
  info << "estimated c = " << format_real(cert.estimate.c) << " (lower bound)\n"
       << "bound       = " << format_real(cert.bound) << '\n'
       << (cert.pass ? "PASS" : "FAIL") << (cert.estimate.low_confidence ? " (low confidence)" : "")
       << '\n';
  if (cert.estimate.low_confidence) return kLowConfidence;
  return cert.pass ? kOk : kPrecondition;
}

int run_verify_cmd(const CommonFlags& flags) {
  const ExperimentConfig cfg = load(flags);
  const auto entries = verify(cfg);
  bool all_pass = true;
  emit(cfg.output, [&](std::ostream& os) {
    os << "epsilon,method,solver_norm,oracle_norm,distance,tolerance,verdict\n";
    for (const auto& e : entries) {
      const NormKind kind = cfg.norm.value_or(build_operator(cfg.problem)->natural_norm());
      os << format_real(e.epsilon) << ',' << oracle::to_string(e.method) << ','
         << (e.solver_value.size() ? format_real(norm(e.solver_value, kind)) : "nan") << ','
         << (e.oracle_value.size() ? format_real(norm(e.oracle_value, kind)) : "nan") << ','
         << format_real(e.distance) << ',' << format_real(e.tolerance) << ','
         << (e.pass ? "PASS" : "FAIL") << '\n';
      if (!e.oracle_ok) std::cerr << "oracle failure at eps " << e.epsilon << ": " << e.oracle_message << '\n';
      all_pass = all_pass && e.pass;
    }
  });
  return all_pass ? kOk : kOracleFailure;
}

int run_constants_cmd(const CommonFlags& flags, ConstantsInput in, const CLI::App& cmd) {
  if (!flags.config.empty()) {
    const ExperimentConfig cfg = load_config(flags.config);
    if (cfg.constants) {
      const ConstantsInput from_file = *cfg.constants;
      // Explicit flags win over the file.
      if (cmd.count("--c") == 0) in.c = from_file.c;
      if (cmd.count("--m2") == 0) in.m2 = from_file.m2;
      if (cmd.count("--m3") == 0) in.m3 = from_file.m3;
      if (cmd.count("--v-norm") == 0) in.v_norm = from_file.v_norm;
      if (cmd.count("--epsilon") == 0) in.epsilon = from_file.epsilon;
    }
  }
  const TheoremConstants k = compute_theorem_constants(in.c, in.m2, in.m3, in.v_norm, in.epsilon);
  emit(flags.out, [&](std::ostream& os) {
    os << "c=" << format_real(k.c) << '\n'
       << "m2=" << format_real(k.m2) << '\n'
       << "m3=" << format_real(k.m3) << '\n'
       << "v_norm=" << format_real(k.v_norm) << '\n'
       << "epsilon=" << format_real(k.epsilon) << '\n'
       << "rho=" << format_real(k.rho) << '\n'
       << "r_min=" << format_real(k.r_min) << '\n'
       << "r_max=" << format_real(k.r_max) << '\n'
       << "q=" << format_real(k.q) << '\n'
       << "epsilon0=" << format_real(k.epsilon0) << '\n';
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singreg: regularized solves of F(u) + eps (u - w) = 0 with singular F'(y)"};
  app.require_subcommand(1);

  CommonFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "solve over an eps grid and fit the rate");
  add_common(sweep, sweep_flags, true);

  CommonFlags solve_flags;
  std::optional<double> solve_eps;
  auto* solve = app.add_subcommand("solve", "single solve; writes the solution vector");
  add_common(solve, solve_flags, true);
  solve->add_option("--epsilon", solve_eps, "eps (default: largest in the config)");

  CommonFlags cert_flags;
  std::optional<double> cert_bound;
  auto* cert = app.add_subcommand("certify-resolvent", "estimate c in |(A + eps)^-1| <= c / eps");
  add_common(cert, cert_flags, true);
  cert->add_option("--bound", cert_bound, "PASS threshold for the estimate");

  CommonFlags verify_flags;
  auto* ver = app.add_subcommand("verify", "compare the solver with an independent oracle");
  add_common(ver, verify_flags, true);

  CommonFlags const_flags;
  ConstantsInput const_in;
  auto* cons = app.add_subcommand("constants", "print rho, radius window, q and eps0");
  add_common(cons, const_flags, false);
  cons->add_option("--c", const_in.c, "resolvent constant");
  cons->add_option("--m2", const_in.m2, "bound on F''");
  cons->add_option("--m3", const_in.m3, "bound on F'''");
  cons->add_option("--v-norm", const_in.v_norm, "|v| with y - w = A v");
  cons->add_option("--epsilon", const_in.epsilon, "eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (*sweep) return run_sweep_cmd(sweep_flags);
    if (*solve) return run_solve_cmd(solve_flags, solve_eps);
    if (*cert) return run_certify_cmd(cert_flags, cert_bound);
    if (*ver) return run_verify_cmd(verify_flags);
    if (*cons) return run_constants_cmd(const_flags, const_in, *cons);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const BallExitError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}
