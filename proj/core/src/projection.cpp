#include "proxilift/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "proxilift/lp.hpp"
#include "proxilift/random.hpp"

namespace proxilift {
namespace {

using lp::Relation;

// min over c of ||x - B c||; variables are (c, t) for sup and (c, s) for sum.
lp::Problem distance_program(const Subspace& j, const Eigen::Ref<const Vector>& x) {
  const int n = j.ambient().dim;
  const int k = j.dim();
  const Matrix& b = j.basis();
  if (j.ambient().norm == NormKind::Sup) {
    lp::Problem prog(k + 1);
    prog.objective(k) = 1.0;
    prog.nonnegative[static_cast<std::size_t>(k)] = true;
    for (int i = 0; i < n; ++i) {
      Vector row(k + 1);
      row.head(k) = b.row(i).transpose();
      row(k) = 1.0;
      prog.add(row, Relation::GreaterEqual, x(i));
      row.head(k) *= -1.0;
      prog.add(row, Relation::GreaterEqual, -x(i));
    }
    return prog;
  }
  lp::Problem prog(k + n);
  for (int i = 0; i < n; ++i) {
    prog.objective(k + i) = 1.0;
    prog.nonnegative[static_cast<std::size_t>(k + i)] = true;
  }
  for (int i = 0; i < n; ++i) {
    Vector row = Vector::Zero(k + n);
    row.head(k) = b.row(i).transpose();
    row(k + i) = 1.0;
    prog.add(row, Relation::GreaterEqual, x(i));
    row.head(k) *= -1.0;
    prog.add(row, Relation::GreaterEqual, -x(i));
  }
  return prog;
}

void check_member(const Subspace& j, const Eigen::Ref<const Vector>& x) {
  if (x.size() != j.ambient().dim) {
    throw DimensionError("vector of length " + std::to_string(x.size()) + " does not belong to " +
                         to_string(j.ambient()));
  }
}

}  // namespace

std::string to_string(ChebyshevVerdict::Kind kind) {
  switch (kind) {
    case ChebyshevVerdict::Kind::YesCertified:
      return "YES_CERTIFIED";
    case ChebyshevVerdict::Kind::YesSampled:
      return "YES_SAMPLED";
    case ChebyshevVerdict::Kind::No:
      return "NO";
  }
  return "?";
}

std::string to_string(ComplementDescription::Kind kind) {
  switch (kind) {
    case ComplementDescription::Kind::WholeSpace:
      return "WHOLE_SPACE";
    case ComplementDescription::Kind::Zero:
      return "ZERO";
    case ComplementDescription::Kind::Span:
      return "SPAN";
    case ComplementDescription::Kind::ConeUnion:
      return "CONE_UNION";
  }
  return "?";
}

double distance(const Subspace& j, const Eigen::Ref<const Vector>& x, const Tolerance& tol) {
  check_member(j, x);
  if (j.dim() == 0) return norm(j.ambient(), x);
  if (j.ambient().norm == NormKind::Euclid) return j.residual(x);
  const auto sol = solve_lp(distance_program(j, x), tol.eps_eq);
  if (sol.status != lp::Status::Optimal) throw std::runtime_error("distance LP did not reach an optimum");
  return std::max(0.0, sol.value);
}

ProjectionResult metric_projection(const Subspace& j, const Eigen::Ref<const Vector>& x,
                                   const Tolerance& tol) {
  check_member(j, x);
  const int n = j.ambient().dim;
  const int k = j.dim();
  ProjectionResult out;
  if (k == 0) {
    out.distance = norm(j.ambient(), x);
    out.representative = Vector::Zero(n);
    return out;
  }
  if (j.ambient().norm == NormKind::Euclid) {
    out.representative = j.basis() * j.coefficients(x);
    out.distance = (x - out.representative).norm();
    return out;
  }
  const auto prog = distance_program(j, x);
  const auto sol = solve_lp(prog, tol.eps_eq);
  if (sol.status != lp::Status::Optimal) throw std::runtime_error("distance LP did not reach an optimum");
  std::vector<int> coords(static_cast<std::size_t>(k));
  std::iota(coords.begin(), coords.end(), 0);
  const auto face = optimal_face(prog, sol, coords, tol.eps_eq);
  out.representative = j.basis() * face.center;
  out.distance = norm(j.ambient(), x - out.representative);
  out.face_dim = face.dim;
  out.is_singleton = face.dim == 0;
  return out;
}

bool in_metric_complement(const Subspace& j, const Eigen::Ref<const Vector>& x, const Tolerance& tol) {
  const double nx = norm(j.ambient(), x);
  const double d = distance(j, x, tol);
  return std::abs(nx - d) <= tol.eps_eq * std::max(1.0, nx);
}

ChebyshevVerdict is_chebyshev(const Subspace& j, int samples, std::uint64_t seed, const Tolerance& tol) {
  ChebyshevVerdict verdict;
  const int n = j.ambient().dim;
  if (j.ambient().norm == NormKind::Euclid || j.dim() == 0 || j.dim() == n) {
    verdict.kind = ChebyshevVerdict::Kind::YesCertified;
    return verdict;
  }
  auto probe = [&](const Vector& x) {
    ++verdict.checked;
    if (metric_projection(j, x, tol).face_dim >= 1) {
      verdict.kind = ChebyshevVerdict::Kind::No;
      verdict.witness = x;
      return true;
    }
    return false;
  };
  if (n <= 6) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 1; code < total; ++code) {
      Vector x(n);
      int rest = code;
      for (int i = 0; i < n; ++i) {
        const int digit = rest % 3;
        rest /= 3;
        x(i) = digit == 0 ? 0.0 : (digit == 1 ? 1.0 : -1.0);
      }
      if (probe(x)) return verdict;
    }
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    if (probe(uniform_vector(rng, n))) return verdict;
  }
  verdict.kind = ChebyshevVerdict::Kind::YesSampled;
  return verdict;
}

Decomposition cheney_wulbert_decompose(const Subspace& j, const Eigen::Ref<const Vector>& x,
                                       const Tolerance& tol) {
  const auto proj = metric_projection(j, x, tol);
  Decomposition out{proj.representative, x - proj.representative};
  if (!in_metric_complement(j, out.j0, tol)) {
    throw std::logic_error("best-approximation residual failed the metric complement check");
  }
  return out;
}

std::optional<Vector> find_complement_violation(const Subspace& j, const Matrix& range,
                                                const Tolerance& tol) {
  const int n = j.ambient().dim;
  const int k = j.dim();
  if (range.rows() != n) throw DimensionError("range vectors do not belong to the space");
  const auto q = static_cast<int>(range.cols());
  if (k == 0 || q == 0 || range.cwiseAbs().maxCoeff() == 0.0) return std::nullopt;

  if (j.ambient().norm == NormKind::Euclid) {
    const Matrix qj = j.orthogonal_projector();
    for (int c = 0; c < q; ++c) {
      const Vector r = range.col(c);
      if ((qj * r).norm() > tol.eps_eq * std::max(1.0, r.norm())) return r;
    }
    return std::nullopt;
  }

  const Matrix& b = j.basis();
  // variables: w (q, free) | c (k, free) | slack block
  auto check = [&](lp::Problem prog) -> std::optional<Vector> {
    const auto sol = solve_lp(prog, tol.eps_eq);
    if (sol.status != lp::Status::Optimal) return std::nullopt;
    if (sol.value < 1.0 - tol.eps_eq) return Vector(range * sol.x.head(q));
    return std::nullopt;
  };

  if (j.ambient().norm == NormKind::Sup) {
    const int vars = q + k + 1;
    for (int i = 0; i < n; ++i) {
      for (double sigma : {1.0, -1.0}) {
        lp::Problem prog(vars);
        prog.objective(q + k) = 1.0;
        prog.nonnegative[static_cast<std::size_t>(q + k)] = true;
        for (int l = 0; l < n; ++l) {
          if (l != i) {
            Vector row = Vector::Zero(vars);
            row.head(q) = sigma * range.row(i).transpose() - range.row(l).transpose();
            prog.add(row, Relation::GreaterEqual, 0.0);
            row.head(q) = sigma * range.row(i).transpose() + range.row(l).transpose();
            prog.add(row, Relation::GreaterEqual, 0.0);
          }
          Vector row = Vector::Zero(vars);
          row.head(q) = range.row(l).transpose();
          row.segment(q, k) = -b.row(l).transpose();
          row(q + k) = -1.0;
          prog.add(row, Relation::LessEqual, 0.0);
          row.head(q + k) *= -1.0;
          prog.add(row, Relation::LessEqual, 0.0);
        }
        Vector unit = Vector::Zero(vars);
        unit.head(q) = sigma * range.row(i).transpose();
        prog.add(unit, Relation::Equal, 1.0);
        if (auto bad = check(std::move(prog))) return bad;
      }
    }
    return std::nullopt;
  }

  if (n > 20) throw UnsupportedError("orthant enumeration is limited to dimension 20");
  const int vars = q + k + n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    lp::Problem prog(vars);
    Vector unit = Vector::Zero(vars);
    for (int l = 0; l < n; ++l) {
      const double sigma = (mask >> l) & 1u ? -1.0 : 1.0;
      prog.objective(q + k + l) = 1.0;
      prog.nonnegative[static_cast<std::size_t>(q + k + l)] = true;
      Vector row = Vector::Zero(vars);
      row.head(q) = sigma * range.row(l).transpose();
      prog.add(row, Relation::GreaterEqual, 0.0);
      unit.head(q) += sigma * range.row(l).transpose();

      row.setZero();
      row.head(q) = range.row(l).transpose();
      row.segment(q, k) = -b.row(l).transpose();
      row(q + k + l) = -1.0;
      prog.add(row, Relation::LessEqual, 0.0);
      row.head(q + k) *= -1.0;
      prog.add(row, Relation::LessEqual, 0.0);
    }
    prog.add(unit, Relation::Equal, 1.0);
    if (auto bad = check(std::move(prog))) return bad;
  }
  return std::nullopt;
}

std::optional<Vector> sample_complement_violation(const Subspace& j, const Matrix& range, int samples,
                                                  std::uint64_t seed, const Tolerance& tol) {
  if (range.rows() != j.ambient().dim) throw DimensionError("range vectors do not belong to the space");
  if (range.cols() == 0) return std::nullopt;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vector r = range * uniform_vector(rng, static_cast<int>(range.cols()));
    const double nr = norm(j.ambient(), r);
    if (nr < 1e-12) continue;
    if (!in_metric_complement(j, r / nr, tol)) return r;
  }
  return std::nullopt;
}

bool ComplementDescription::contains(const Vector& x, const Tolerance& tol) const {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  switch (kind) {
    case Kind::WholeSpace:
      return true;
    case Kind::Zero:
      return x.cwiseAbs().maxCoeff() <= tol.eps_eq;
    case Kind::Span: {
      const Vector& g = generators.front();
      return std::abs(x(0) * g(1) - x(1) * g(0)) <= tol.eps_eq * scale * g.norm();
    }
    case Kind::ConeUnion:
      return std::abs(x(1 - axis)) >= std::abs(x(axis)) - tol.eps_eq * scale;
  }
  return false;
}

ComplementDescription linf2_complement(double u, double v) {
  if (u == 0.0 && v == 0.0) throw std::invalid_argument("zero generator does not span a line");
  ComplementDescription out;
  if (u * v != 0.0) {
    const double a = v / u;
    out.kind = ComplementDescription::Kind::Span;
    out.is_subspace = true;
    out.generators.push_back(a > 0.0 ? Vector{{1.0, -1.0}} : Vector{{1.0, 1.0}});
    return out;
  }
  out.kind = ComplementDescription::Kind::ConeUnion;
  out.is_subspace = false;
  out.axis = u != 0.0 ? 0 : 1;
  // bounding rays of the double cone and its central axis
  out.generators.push_back(Vector::Unit(2, 1 - out.axis));
  out.generators.push_back(Vector{{1.0, 1.0}});
  out.generators.push_back(Vector{{1.0, -1.0}});
  return out;
}

ComplementDescription linf2_complement(const Subspace& j) {
  if (j.ambient() != Space(2, NormKind::Sup)) throw UnsupportedError("linf2_complement needs l_inf^2");
  ComplementDescription out;
  if (j.dim() == 0) {
    out.kind = ComplementDescription::Kind::WholeSpace;
    out.generators = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
    return out;
  }
  if (j.dim() == 2) {
    out.kind = ComplementDescription::Kind::Zero;
    return out;
  }
  return linf2_complement(j.basis()(0, 0), j.basis()(1, 0));
}

}  // namespace proxilift
