#pragma once

#include "proxilift/space.hpp"

namespace proxilift {

/// Grid search over J-coefficients in [-grid_radius, grid_radius]^k with
/// grid_steps points per axis (k <= 3). Independent of the LP path, so it is
/// used to cross-check distance(). Always an upper bound on the distance.
double brute_distance_oracle(const Subspace& j, const Vector& x, double grid_radius, int grid_steps);

/// Same search under an arbitrary norm callback.
double brute_distance_oracle(const NormFunction& norm_fn, const Subspace& j, const Vector& x,
                             double grid_radius, int grid_steps);

}  // namespace proxilift
