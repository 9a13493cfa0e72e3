#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proxilift {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when a vector, matrix or map does not fit the space it is used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a basis is numerically rank deficient.
class RankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for norm pairs or sizes that the exact routines do not cover.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NormKind { Sup, Sum, Euclid };

std::string to_string(NormKind kind);

/// Comparison tolerances shared by every routine in the library.
struct Tolerance {
  double eps_eq = 1e-9;     ///< relative tolerance for scalar equality
  double eps_rank = 1e-10;  ///< rank threshold for column-pivoted elimination
  int sphere_samples = 4096;

  void validate() const;
  /// |a - b| <= eps_eq * max(1, |a|, |b|)
  bool equal(double a, double b) const;
};

/// A finite-dimensional real normed space: R^dim with the sup, sum or
/// Euclidean norm.
struct Space {
  int dim = 1;
  NormKind norm = NormKind::Sup;

  Space() = default;
  Space(int dim, NormKind norm);

  friend bool operator==(const Space&, const Space&) = default;
};

/// Parses "linf:3", "l1:2" or "l2:4".
Space parse_space(std::string_view spec);
std::string to_string(const Space& space);

double norm(NormKind kind, const Eigen::Ref<const Vector>& x);
double norm(const Space& space, const Eigen::Ref<const Vector>& x);

/// A norm given as a callback. Only the sampling oracles accept these.
using NormFunction = std::function<double(const Vector&)>;

/// Rank by Gaussian elimination with column pivoting; entries below
/// eps * max|m_ij| are treated as zero.
int numerical_rank(const Matrix& m, double eps);

/// A linear subspace J of a Space, stored as a full-rank column basis.
/// k = 0 (the zero subspace) is allowed.
class Subspace {
 public:
  Subspace(Space ambient, Matrix basis, const Tolerance& tol = {});

  static Subspace zero(const Space& ambient);
  static Subspace whole(const Space& ambient);
  static Subspace span(const Space& ambient, const std::vector<Vector>& vectors,
                       const Tolerance& tol = {});

  const Space& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int codim() const { return ambient_.dim - dim(); }

  /// Least-squares coefficients of x in the basis.
  Vector coefficients(const Eigen::Ref<const Vector>& x) const;
  /// Euclidean residual of x after least-squares fitting by the basis.
  double residual(const Eigen::Ref<const Vector>& x) const;
  bool contains(const Eigen::Ref<const Vector>& x, const Tolerance& tol = {}) const;
  /// Orthogonal projector onto J in the Euclidean inner product.
  Matrix orthogonal_projector() const;
  /// Columns spanning the Euclidean orthogonal complement (the annihilator
  /// of J under the standard pairing).
  Matrix annihilator() const;

 private:
  Space ambient_;
  Matrix basis_;
};

/// Parses "1,1,1;0,1,2" into column vectors.
std::vector<Vector> parse_vectors(std::string_view spec);
Vector parse_vector(std::string_view spec);

}  // namespace proxilift
