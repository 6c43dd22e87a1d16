// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "singreg/hilbert_vector.hpp"
#include "singreg/norms.hpp"

namespace singreg {

using Rng = std::mt19937_64;

/// Gaussian vector in the space of `like`.
HilbertVector random_gaussian(const HilbertVector& like, Rng& rng);

/// Random low-frequency cosine series on the grid; modes per axis in [0, modes).
/// Amplitudes decay like 1/(1 + |k|^2) so the result is smooth.
HilbertVector random_smooth_field(std::shared_ptr<const GridDomain> grid, Rng& rng,
                                  int modes = 3);

/// Rescales a nonzero vector to the given norm.
HilbertVector scaled_to_norm(const HilbertVector& v, double target, NormKind kind);

/// Scales a unit-norm direction by a radius drawn so the point is uniform
/// in the dim-dimensional ball of radius R.
double random_ball_radius(double R, Index dim, Rng& rng);

}  // namespace singreg
