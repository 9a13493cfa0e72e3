#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxilift/space.hpp"

namespace proxilift {

/// One best approximation to x from J, plus the shape of the whole set P_J(x).
struct ProjectionResult {
  double distance = 0.0;
  /// A point of P_J(x). For polyhedral norms this is the average of the
  /// optimal vertices found while probing the optimal face.
  Vector representative;
  bool is_singleton = true;
  int face_dim = 0;
};

/// dist(x, J): an LP for the sup and sum norms, least squares for Euclid.
double distance(const Subspace& j, const Eigen::Ref<const Vector>& x, const Tolerance& tol = {});

ProjectionResult metric_projection(const Subspace& j, const Eigen::Ref<const Vector>& x,
                                   const Tolerance& tol = {});

/// x lies in the metric complement J0 = { x : ||x|| = dist(x, J) }.
bool in_metric_complement(const Subspace& j, const Eigen::Ref<const Vector>& x,
                          const Tolerance& tol = {});

struct ChebyshevVerdict {
  enum class Kind { YesCertified, YesSampled, No };
  Kind kind = Kind::YesSampled;
  /// Some x whose best-approximation set has dimension >= 1 (when kind == No).
  std::optional<Vector> witness;
  int checked = 0;
};

std::string to_string(ChebyshevVerdict::Kind kind);

/// Euclidean spaces are certified. Polyhedral norms are probed on the
/// {-1,0,1}^n lattice (n <= 6) followed by `samples` random points.
ChebyshevVerdict is_chebyshev(const Subspace& j, int samples, std::uint64_t seed = 42,
                              const Tolerance& tol = {});

struct Decomposition {
  Vector j;
  Vector j0;
};

/// x = j + j0 with j in P_J(x) and j0 in J0. Throws if the complement
/// membership of j0 fails to validate.
Decomposition cheney_wulbert_decompose(const Subspace& j, const Eigen::Ref<const Vector>& x,
                                       const Tolerance& tol = {});

/// Looks for r in span(range) with ||r|| > dist(r, J).
///
/// Sup and sum norms are decided exactly: the unit sphere splits into cells
/// on which the norm is a single linear functional a (2n faces of the cube,
/// 2^n orthants of the cross-polytope). On each cell, min dist(r, J) subject
/// to a.r = 1 is an LP; the span lies in J0 iff every such minimum is 1.
/// The Euclidean case reduces to orthogonality against J.
/// Returns a violating r, or nullopt when span(range) is contained in J0.
std::optional<Vector> find_complement_violation(const Subspace& j, const Matrix& range,
                                                const Tolerance& tol = {});

/// Sampled version of the same check over random points of span(range).
std::optional<Vector> sample_complement_violation(const Subspace& j, const Matrix& range, int samples,
                                                  std::uint64_t seed, const Tolerance& tol = {});

/// Description of the metric complement of a subspace of l_inf^2.
struct ComplementDescription {
  enum class Kind { WholeSpace, Zero, Span, ConeUnion };
  Kind kind = Kind::Span;
  std::vector<Vector> generators;
  bool is_subspace = true;
  /// For ConeUnion: J is spanned by e_axis and J0 = { x : |x_other| >= |x_axis| }.
  int axis = -1;

  bool contains(const Vector& x, const Tolerance& tol = {}) const;
};

std::string to_string(ComplementDescription::Kind kind);

/// Closed-form J0 for J = span(u, v) in l_inf^2.
ComplementDescription linf2_complement(double u, double v);
/// Same, also covering J = {0} and J = X.
ComplementDescription linf2_complement(const Subspace& j);

}  // namespace proxilift
