#pragma once

#include <variant>

#include "proxilift/quotient.hpp"
#include "proxilift/space.hpp"

namespace proxilift {

/// Either a normed space or a quotient X/J.
using Domain = std::variant<Space, QuotientSpace>;

/// Dimension of the space as a vector space (n, or n - k for X/J).
int effective_dim(const Domain& d);
/// Length of the vectors stored for elements: n for X and for X/J, whose
/// elements are held as coset representatives.
int representative_dim(const Domain& d);
std::string describe(const Domain& d);

/// A linear operator between spaces and quotients.
///
/// Columns index the domain: standard coordinates for a Space, coset
/// coordinates (see QuotientSpace) for X/J. Rows index the codomain: for a
/// quotient codomain each column is a coset representative in the ambient
/// space, so the matrix has n rows regardless of J.
struct LinearMap {
  Matrix matrix;
  Domain domain;
  Domain codomain;

  LinearMap(Matrix m, Domain from, Domain to);

  /// The same operator with a Space domain: composes with the coset
  /// coordinate map when the domain is a quotient.
  LinearMap lifted_to_ambient_domain() const;
};

/// Exact operator norm.
///
/// Sum-norm domains maximise over the columns, sup-norm domains over all
/// 2^(dim-1) sign patterns (dim <= 12); the codomain norm may be a quotient
/// norm, evaluated as a distance. Euclid -> Euclid uses the top singular
/// value, also for Euclidean quotients. A quotient domain is handled through
/// the ambient unit ball, whose image under pi is the unit ball of X/J.
double operator_norm(const LinearMap& t, const Tolerance& tol = {});

/// Largest sup-norm domain dimension handled by sign enumeration.
inline constexpr int kMaxEnumerationDim = 12;

}  // namespace proxilift
