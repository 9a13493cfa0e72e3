#include "proxilift/quotient.hpp"

#include <vector>

#include "proxilift/projection.hpp"

namespace proxilift {

QuotientSpace::QuotientSpace(Subspace j, const Tolerance& tol) : j_(std::move(j)) {
  const int n = j_.ambient().dim;
  const int k = j_.dim();
  // complete J with the unit vectors J is least aligned with: the pivot
  // columns of B^T are the coordinates where the basis is best conditioned
  std::vector<bool> pivot(static_cast<std::size_t>(n), false);
  if (k > 0) {
    const Eigen::ColPivHouseholderQR<Matrix> qr(j_.basis().transpose());
    for (int i = 0; i < k; ++i) pivot[static_cast<std::size_t>(qr.colsPermutation().indices()(i))] = true;
  }
  complement_.resize(n, n - k);
  int found = 0;
  for (int i = 0; i < n; ++i) {
    if (!pivot[static_cast<std::size_t>(i)]) complement_.col(found++) = Vector::Unit(n, i);
  }
  Matrix stacked(n, n);
  stacked << j_.basis(), complement_;
  if (numerical_rank(stacked, tol.eps_rank) != n) throw RankError("could not complete the subspace basis");
  const Matrix inverse = stacked.inverse();
  coords_ = inverse.bottomRows(n - k);
}

Vector QuotientSpace::coordinates(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != ambient().dim) throw DimensionError("vector does not belong to the space");
  return coords_ * x;
}

Vector QuotientSpace::representative(const Eigen::Ref<const Vector>& coords) const {
  if (coords.size() != dim()) throw DimensionError("quotient coordinates have wrong length");
  return complement_ * coords;
}

double QuotientSpace::quotient_norm(const Eigen::Ref<const Vector>& x, const Tolerance& tol) const {
  return distance(j_, x, tol);
}

double QuotientSpace::class_residual(const Eigen::Ref<const Vector>& x) const {
  if (dim() == 0) return 0.0;
  return coordinates(x).cwiseAbs().maxCoeff();
}

bool operator==(const QuotientSpace& a, const QuotientSpace& b) {
  return a.ambient() == b.ambient() && a.subspace().basis().rows() == b.subspace().basis().rows() &&
         a.subspace().basis().cols() == b.subspace().basis().cols() &&
         a.subspace().basis() == b.subspace().basis();
}

}  // namespace proxilift
