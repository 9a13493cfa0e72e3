#include "proxilift/oracle.hpp"

#include <algorithm>
#include <limits>

namespace proxilift {

double brute_distance_oracle(const Subspace& j, const Vector& x, double grid_radius, int grid_steps) {
  const Space space = j.ambient();
  return brute_distance_oracle([space](const Vector& v) { return norm(space, v); }, j, x, grid_radius,
                               grid_steps);
}

double brute_distance_oracle(const NormFunction& norm_fn, const Subspace& j, const Vector& x,
                             double grid_radius, int grid_steps) {
  const int k = j.dim();
  if (k > 3) throw UnsupportedError("grid oracle supports subspaces of dimension <= 3");
  if (x.size() != j.ambient().dim) throw DimensionError("vector does not belong to the space");
  if (k == 0) return norm_fn(x);
  if (grid_steps < 2) throw std::invalid_argument("grid needs at least two steps per axis");

  const double step = 2.0 * grid_radius / (grid_steps - 1);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  Vector coeffs(k);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    for (int i = 0; i < k; ++i) coeffs(i) = -grid_radius + step * idx[static_cast<std::size_t>(i)];
    best = std::min(best, norm_fn(x - j.basis() * coeffs));
    int axis = 0;
    while (axis < k && ++idx[static_cast<std::size_t>(axis)] == grid_steps) {
      idx[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == k) break;
  }
  return best;
}

}  // namespace proxilift
