// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace singreg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors from different spaces or of different dimension were combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A vector was built from data containing NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A certified-mode precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// 2 M2 |v| c (1 + c) >= 1, so no radius window exists.
class AdmissibilityError : public PreconditionError {
 public:
  AdmissibilityError(const std::string& what, double product)
      : PreconditionError(what), product_(product) {}
  double product() const noexcept { return product_; }

 private:
  double product_;
};

class LinearSolveError : public Error {
 public:
  LinearSolveError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An iterate left the working ball in certified mode.
class BallExitError : public Error {
 public:
  BallExitError(const std::string& what, int iteration, double norm, double radius)
      : Error(what), iteration_(iteration), norm_(norm), radius_(radius) {}
  int iteration() const noexcept { return iteration_; }
  double norm() const noexcept { return norm_; }
  double radius() const noexcept { return radius_; }

 private:
  int iteration_;
  double norm_;
  double radius_;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class SingularJacobianError : public Error {
 public:
  using Error::Error;
};

class NoFitError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace singreg
