#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxilift/space.hpp"

namespace proxilift {

/// How the best-approximation property of a candidate selection was checked.
enum class CheckMode { Exact, Sampled };

std::string to_string(CheckMode mode);

/// Candidate linear selection p : X -> J together with what verify_selection
/// found. The map is a selection iff `violations` is empty.
struct SelectionCertificate {
  Matrix p;
  CheckMode status = CheckMode::Exact;
  std::vector<std::string> violations;
  std::string method;
  /// A point x with ||x - p(x)|| > dist(x, J), when one was found.
  std::optional<Vector> counterexample;

  bool certified() const { return violations.empty(); }
};

/// f, g with unique best approximations whose sum is not a best
/// approximation to f + g. Any linear selection would have to send f + g to
/// pf + pg, so none exists.
struct NonlinearityWitness {
  Vector f, g;
  Vector pf, pg, pfg;
};

struct WitnessCheck {
  /// pf, pg, pfg are best approximations and pf + pg is not.
  bool valid = false;
  /// P_J(f) and P_J(g) are singletons, so the witness rules out every linear selection.
  bool conclusive = false;
  std::string reason;
};

/// Re-validates a witness using metric-projection calls only.
WitnessCheck check_witness(const Subspace& j, const NonlinearityWitness& w, const Tolerance& tol = {});

/// Dimension up to which the best-approximation check is exact for the
/// polyhedral norms.
inline constexpr int kExactCellMaxDim = 3;

/// Checks that p maps into J, fixes J, and satisfies ||x - p(x)|| = dist(x, J)
/// for all x. The last condition is equivalent to range(I - p) lying in J0;
/// it is decided exactly for l2 and for dim(X) <= 3, and on
/// tol.sphere_samples random points otherwise.
SelectionCertificate verify_selection(const Subspace& j, const Matrix& p, const Tolerance& tol = {},
                                      std::uint64_t seed = 42);

/// The projection onto J along span(complement).
Matrix projection_along(const Matrix& j_basis, const Matrix& complement);

/// Codimension-one rule: p(x) = x - f(x) / f(x0) * x0 with x0 a norming
/// vector of f (|f(x0)| = ||f||_* ||x0||). Since dist(x, ker f) =
/// |f(x)| / ||f||_*, span(x0) lies in J0 and p is a linear selection.
SelectionCertificate hyperplane_selection(const Space& space, const Vector& functional,
                                          const Tolerance& tol = {});
SelectionCertificate hyperplane_selection(const Subspace& j, const Vector& functional,
                                          const Tolerance& tol = {});

struct SearchOptions {
  std::uint64_t seed = 42;
  /// Number of random best-approximation residuals fed to the complement search.
  int candidate_budget = 512;
  Tolerance tol;
};

struct SelectionSearch {
  std::optional<SelectionCertificate> selection;
  std::optional<NonlinearityWitness> witness;
  /// Neither a selection nor a conclusive witness was produced.
  bool inconclusive = false;
  std::string note;

  bool found() const { return selection.has_value(); }
};

/// Deterministic search for a linear selection of P_J.
///
/// Closed forms are tried first: trivial subspaces, the Euclidean projector,
/// the M-projection onto a coordinate subspace of l_inf^n, the l_inf^2
/// classification and the codimension-one rule. For codimension >= 2 the
/// search looks for a nonlinearity witness among lattice and random points,
/// then greedily assembles a complement J1 of J inside J0 from
/// best-approximation residuals.
SelectionSearch find_linear_selection(const Subspace& j, const SearchOptions& options = {});

/// Whether J = span{f} admits a linear selection (f != 0, dim <= 4).
bool span_support_qlp_test(NormKind norm, const Vector& f, const SearchOptions& options = {});
SelectionSearch span_support_search(NormKind norm, const Vector& f, const SearchOptions& options = {});

/// J is spanned by standard basis vectors; returns the coordinate indices, or
/// an empty vector when it is not.
std::vector<int> coordinate_support(const Subspace& j, const Tolerance& tol = {});

std::string format_vector(const Vector& v);

}  // namespace proxilift
