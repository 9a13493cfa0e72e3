#include "proxilift/random.hpp"

namespace proxilift {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Vector uniform_vector(Rng& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

Matrix uniform_matrix(Rng& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

Vector unit_vector(Rng& rng, const Space& space) {
  for (;;) {
    Vector v = uniform_vector(rng, space.dim);
    const double n = norm(space, v);
    if (n > 1e-3) return v / n;
  }
}

Subspace random_subspace(Rng& rng, const Space& space, int k) {
  if (k < 0 || k > space.dim) throw DimensionError("subspace dimension out of range");
  if (k == 0) return Subspace::zero(space);
  for (;;) {
    Matrix basis = uniform_matrix(rng, space.dim, k);
    const Eigen::JacobiSVD<Matrix> svd(basis);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.05 * s(0)) return Subspace(space, std::move(basis));
  }
}

int uniform_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

}  // namespace proxilift
