#pragma once

#include "proxilift/space.hpp"

namespace proxilift {

/// X/J with a fixed linear complement of J used for coset coordinates.
///
/// The complement is picked by column pivoting over the standard basis, so a
/// class [x] has coordinates w with x - C w in J. These coordinates are
/// linear in x; the quotient norm of [x] is dist(x, J).
class QuotientSpace {
 public:
  explicit QuotientSpace(Subspace j, const Tolerance& tol = {});

  const Space& ambient() const { return j_.ambient(); }
  const Subspace& subspace() const { return j_; }
  /// n x (n - k), one coset representative per column.
  const Matrix& complement_basis() const { return complement_; }
  /// (n - k) x n; maps x to the coordinates of [x].
  const Matrix& coordinate_map() const { return coords_; }
  int dim() const { return static_cast<int>(complement_.cols()); }

  Vector coordinates(const Eigen::Ref<const Vector>& x) const;
  Vector representative(const Eigen::Ref<const Vector>& coords) const;
  double quotient_norm(const Eigen::Ref<const Vector>& x, const Tolerance& tol = {}) const;
  /// Largest |coordinate| of [x]; zero iff x lies in J.
  double class_residual(const Eigen::Ref<const Vector>& x) const;

  friend bool operator==(const QuotientSpace& a, const QuotientSpace& b);

 private:
  Subspace j_;
  Matrix complement_;
  Matrix coords_;
};

}  // namespace proxilift
