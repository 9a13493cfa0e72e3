#include "proxilift/space.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace proxilift {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Sup:
      return "linf";
    case NormKind::Sum:
      return "l1";
    case NormKind::Euclid:
      return "l2";
  }
  return "?";
}

void Tolerance::validate() const {
  if (!(eps_eq > 0.0) || !(eps_rank > 0.0) || sphere_samples <= 0) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
}

bool Tolerance::equal(double a, double b) const {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= eps_eq * scale;
}

Space::Space(int dim_, NormKind norm_) : dim(dim_), norm(norm_) {
  if (dim < 1) throw DimensionError("space dimension must be >= 1");
}

Space parse_space(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("space spec must look like linf:N, l1:N or l2:N");
  }
  const auto kind = spec.substr(0, colon);
  const auto count = spec.substr(colon + 1);
  NormKind norm_kind;
  if (kind == "linf" || kind == "sup") {
    norm_kind = NormKind::Sup;
  } else if (kind == "l1" || kind == "sum") {
    norm_kind = NormKind::Sum;
  } else if (kind == "l2" || kind == "euclid") {
    norm_kind = NormKind::Euclid;
  } else {
    throw std::invalid_argument("unknown norm kind '" + std::string(kind) + "'");
  }
  int dim = 0;
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), dim);
  if (ec != std::errc() || ptr != count.data() + count.size() || dim < 1) {
    throw std::invalid_argument("bad space dimension '" + std::string(count) + "'");
  }
  return Space(dim, norm_kind);
}

std::string to_string(const Space& space) {
  return to_string(space.norm) + ":" + std::to_string(space.dim);
}

double norm(NormKind kind, const Eigen::Ref<const Vector>& x) {
  if (x.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::Sup:
      return x.cwiseAbs().maxCoeff();
    case NormKind::Sum:
      return x.cwiseAbs().sum();
    case NormKind::Euclid:
      return x.norm();
  }
  return 0.0;
}

double norm(const Space& space, const Eigen::Ref<const Vector>& x) {
  if (x.size() != space.dim) {
    throw DimensionError("vector of length " + std::to_string(x.size()) +
                         " does not belong to " + to_string(space));
  }
  return norm(space.norm, x);
}

int numerical_rank(const Matrix& m, double eps) {
  if (m.size() == 0) return 0;
  Matrix a = m;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  const double threshold = eps * scale;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  int rank = 0;
  for (Eigen::Index step = 0; step < std::min(rows, cols); ++step) {
    // full pivot over the remaining block; columns are swapped as we go
    Eigen::Index pr = step, pc = step;
    double best = 0.0;
    for (Eigen::Index c = step; c < cols; ++c) {
      for (Eigen::Index r = step; r < rows; ++r) {
        if (std::abs(a(r, c)) > best) {
          best = std::abs(a(r, c));
          pr = r;
          pc = c;
        }
      }
    }
    if (best <= threshold) break;
    a.row(step).swap(a.row(pr));
    a.col(step).swap(a.col(pc));
    for (Eigen::Index r = step + 1; r < rows; ++r) {
      const double factor = a(r, step) / a(step, step);
      a.row(r).tail(cols - step) -= factor * a.row(step).tail(cols - step);
    }
    ++rank;
  }
  return rank;
}

Subspace::Subspace(Space ambient, Matrix basis, const Tolerance& tol)
    : ambient_(ambient), basis_(std::move(basis)) {
  if (basis_.cols() > 0 && basis_.rows() != ambient_.dim) {
    throw DimensionError("basis vectors have length " + std::to_string(basis_.rows()) +
                         " but the space is " + to_string(ambient_));
  }
  if (basis_.cols() == 0) basis_.resize(ambient_.dim, 0);
  if (basis_.cols() > ambient_.dim) {
    throw RankError("more basis vectors than the ambient dimension");
  }
  if (!basis_.allFinite()) throw std::invalid_argument("basis has non-finite entries");
  if (numerical_rank(basis_, tol.eps_rank) != basis_.cols()) {
    throw RankError("subspace basis is rank deficient");
  }
}

Subspace Subspace::zero(const Space& ambient) { return Subspace(ambient, Matrix(ambient.dim, 0)); }

Subspace Subspace::whole(const Space& ambient) {
  return Subspace(ambient, Matrix::Identity(ambient.dim, ambient.dim));
}

Subspace Subspace::span(const Space& ambient, const std::vector<Vector>& vectors,
                        const Tolerance& tol) {
  Matrix basis(ambient.dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient.dim) {
      throw DimensionError("generator " + std::to_string(i) + " has wrong length");
    }
    basis.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return Subspace(ambient, std::move(basis), tol);
}

Vector Subspace::coefficients(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != ambient_.dim) throw DimensionError("vector does not belong to the space");
  if (dim() == 0) return Vector(0);
  return basis_.colPivHouseholderQr().solve(x);
}

double Subspace::residual(const Eigen::Ref<const Vector>& x) const {
  if (dim() == 0) return x.norm();
  return (x - basis_ * coefficients(x)).norm();
}

bool Subspace::contains(const Eigen::Ref<const Vector>& x, const Tolerance& tol) const {
  return residual(x) <= tol.eps_eq * std::max(1.0, x.norm());
}

Matrix Subspace::orthogonal_projector() const {
  if (dim() == 0) return Matrix::Zero(ambient_.dim, ambient_.dim);
  const Eigen::HouseholderQR<Matrix> qr(basis_);
  const Matrix q = qr.householderQ() * Matrix::Identity(ambient_.dim, dim());
  return q * q.transpose();
}

Matrix Subspace::annihilator() const {
  const Eigen::Index n = ambient_.dim;
  if (dim() == 0) return Matrix::Identity(n, n);
  const Eigen::HouseholderQR<Matrix> qr(basis_);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - dim());
}

Vector parse_vector(std::string_view spec) {
  std::string cleaned;
  for (char c : spec) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c))) {
      continue;
    }
    cleaned.push_back(c);
  }
  std::vector<double> values;
  std::stringstream in(cleaned);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty coordinate in '" + std::string(spec) + "'");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed coordinate '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("malformed coordinate '" + item + "'");
    values.push_back(value);
  }
  if (values.empty()) throw std::invalid_argument("empty vector");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<Vector> parse_vectors(std::string_view spec) {
  std::vector<Vector> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto end = spec.find(';', start);
    const auto piece = spec.substr(start, end == std::string_view::npos ? spec.npos : end - start);
    if (!piece.empty()) out.push_back(parse_vector(piece));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace proxilift
