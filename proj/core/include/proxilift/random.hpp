#pragma once

#include <cstdint>
#include <random>

#include "proxilift/space.hpp"

namespace proxilift {

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of a run seeded with `seed`; results
/// do not depend on the order trials are evaluated in.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

/// Entries uniform in [-1, 1].
Vector uniform_vector(Rng& rng, int n);
Matrix uniform_matrix(Rng& rng, int rows, int cols);
/// Uniform in [-1, 1]^n, rescaled to norm 1 in the given space.
Vector unit_vector(Rng& rng, const Space& space);
/// Random k-dimensional subspace; redraws until the basis is comfortably
/// full rank.
Subspace random_subspace(Rng& rng, const Space& space, int k);
/// Uniform integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

}  // namespace proxilift
