#include "proxilift/linear_map.hpp"

#include <algorithm>
#include <cstdint>

#include "proxilift/projection.hpp"

namespace proxilift {

int effective_dim(const Domain& d) {
  if (const auto* s = std::get_if<Space>(&d)) return s->dim;
  return std::get<QuotientSpace>(d).dim();
}

int representative_dim(const Domain& d) {
  if (const auto* s = std::get_if<Space>(&d)) return s->dim;
  return std::get<QuotientSpace>(d).ambient().dim;
}

std::string describe(const Domain& d) {
  if (const auto* s = std::get_if<Space>(&d)) return to_string(*s);
  const auto& q = std::get<QuotientSpace>(d);
  return to_string(q.ambient()) + "/J(dim " + std::to_string(q.subspace().dim()) + ")";
}

LinearMap::LinearMap(Matrix m, Domain from, Domain to)
    : matrix(std::move(m)), domain(std::move(from)), codomain(std::move(to)) {
  if (matrix.cols() != effective_dim(domain) || matrix.rows() != representative_dim(codomain)) {
    throw DimensionError("matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                         " but the map is " + describe(domain) + " -> " + describe(codomain));
  }
}

LinearMap LinearMap::lifted_to_ambient_domain() const {
  if (std::holds_alternative<Space>(domain)) return *this;
  const auto& q = std::get<QuotientSpace>(domain);
  return LinearMap(matrix * q.coordinate_map(), q.ambient(), codomain);
}

double operator_norm(const LinearMap& t, const Tolerance& tol) {
  const LinearMap flat = t.lifted_to_ambient_domain();
  const Space& from = std::get<Space>(flat.domain);
  const Matrix& m = flat.matrix;
  if (m.size() == 0) return 0.0;

  auto target_norm = [&](const Vector& y) -> double {
    if (const auto* s = std::get_if<Space>(&flat.codomain)) return norm(*s, y);
    return std::get<QuotientSpace>(flat.codomain).quotient_norm(y, tol);
  };

  switch (from.norm) {
    case NormKind::Sum: {
      double best = 0.0;
      for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, target_norm(m.col(c)));
      return best;
    }
    case NormKind::Sup: {
      if (from.dim > kMaxEnumerationDim) {
        throw UnsupportedError("sup-norm domain of dimension " + std::to_string(from.dim) +
                               " is too large for sign enumeration");
      }
      double best = 0.0;
      const std::uint32_t patterns = 1u << (from.dim - 1);
      Vector sign(from.dim);
      for (std::uint32_t mask = 0; mask < patterns; ++mask) {
        sign(0) = 1.0;
        for (int i = 1; i < from.dim; ++i) sign(i) = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
        best = std::max(best, target_norm(m * sign));
      }
      return best;
    }
    case NormKind::Euclid: {
      if (const auto* s = std::get_if<Space>(&flat.codomain)) {
        if (s->norm != NormKind::Euclid) throw UnsupportedError("l2 domain needs an l2 codomain");
        return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
      }
      const auto& q = std::get<QuotientSpace>(flat.codomain);
      if (q.ambient().norm != NormKind::Euclid) throw UnsupportedError("l2 domain needs an l2 codomain");
      const Matrix residual_map = (Matrix::Identity(q.ambient().dim, q.ambient().dim) -
                                   q.subspace().orthogonal_projector()) * m;
      return Eigen::JacobiSVD<Matrix>(residual_map).singularValues()(0);
    }
  }
  return 0.0;
}

}  // namespace proxilift
