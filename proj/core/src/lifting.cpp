#include "proxilift/lifting.hpp"

#include <algorithm>
#include <cmath>

#include "proxilift/lp.hpp"
#include "proxilift/projection.hpp"

namespace proxilift {
namespace {

const QuotientSpace& quotient_codomain(const LinearMap& m, const char* what) {
  const auto* q = std::get_if<QuotientSpace>(&m.codomain);
  if (!q) throw std::invalid_argument(std::string(what) + " must map into a quotient X/J");
  return *q;
}

bool same_domain(const Domain& a, const Domain& b) {
  if (a.index() != b.index()) return false;
  if (const auto* s = std::get_if<Space>(&a)) return *s == std::get<Space>(b);
  return std::get<QuotientSpace>(a) == std::get<QuotientSpace>(b);
}

double residual_tolerance(const Tolerance& tol, const Matrix& a, const Matrix& b) {
  double scale = 1.0;
  if (a.size()) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  if (b.size()) scale = std::max(scale, b.cwiseAbs().maxCoeff());
  return tol.eps_eq * scale;
}

LiftReport make_report(Matrix t, const LinearMap& S, const QuotientSpace& q, const Tolerance& tol) {
  LiftReport report{LinearMap(std::move(t), S.domain, q.ambient())};
  report.composition_residual = composition_residual(q, report.T.matrix, S.matrix);
  report.composition_ok =
      report.composition_residual <= residual_tolerance(tol, report.T.matrix, S.matrix);
  report.norm_S = operator_norm(S, tol);
  report.norm_T = operator_norm(report.T, tol);
  report.norm_preserved = std::abs(report.norm_T - report.norm_S) <= tol.eps_eq * std::max(1.0, report.norm_S);
  return report;
}

}  // namespace

LinearMap quotient_map(const QuotientSpace& q) {
  const int n = q.ambient().dim;
  return LinearMap(Matrix::Identity(n, n), q.ambient(), q);
}

LinearMap iso_from_selection(const QuotientSpace& q, const SelectionCertificate& p, const Tolerance& tol) {
  if (!p.certified()) throw std::invalid_argument("selection is not certified");
  const int n = q.ambient().dim;
  if (p.p.rows() != n || p.p.cols() != n) throw DimensionError("selection does not act on the ambient space");
  const Matrix residual_map = Matrix::Identity(n, n) - p.p;
  const Matrix& b = q.subspace().basis();
  if (b.cols() > 0 && (residual_map * b).cwiseAbs().maxCoeff() > tol.eps_eq * std::max(1.0, b.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("selection does not fix J, so x - p(x) is not constant on cosets");
  }
  return LinearMap(residual_map * q.complement_basis(), q, q.ambient());
}

double composition_residual(const QuotientSpace& q, const Matrix& lift, const Matrix& target) {
  if (lift.rows() != target.rows() || lift.cols() != target.cols()) {
    throw DimensionError("lift and target have different shapes");
  }
  double worst = 0.0;
  for (Eigen::Index c = 0; c < lift.cols(); ++c) {
    worst = std::max(worst, q.class_residual(lift.col(c) - target.col(c)));
  }
  return worst;
}

LiftReport lift_operator(const LinearMap& S, const SelectionCertificate& p, const Tolerance& tol) {
  const auto& q = quotient_codomain(S, "S");
  const LinearMap psi = iso_from_selection(q, p, tol);
  const int n = q.ambient().dim;
  // psi([s]) = (I - p) s for any representative s
  return make_report((Matrix::Identity(n, n) - p.p) * S.matrix, S, q, tol);
}

bool lift_norm_lower_bound_check(const LinearMap& S, const LinearMap& T, const Tolerance& tol) {
  const auto& q = quotient_codomain(S, "S");
  if (!std::holds_alternative<Space>(T.codomain) || std::get<Space>(T.codomain) != q.ambient()) {
    throw std::invalid_argument("T must map into the ambient space of X/J");
  }
  if (!same_domain(S.domain, T.domain)) throw std::invalid_argument("S and T have different domains");
  if (composition_residual(q, T.matrix, S.matrix) > residual_tolerance(tol, T.matrix, S.matrix)) {
    throw std::invalid_argument("pi o T differs from S");
  }
  const double ns = operator_norm(S, tol);
  const double nt = operator_norm(T, tol);
  return ns <= nt + tol.eps_eq * std::max(1.0, nt);
}

SelectionCertificate selection_from_lift(const QuotientSpace& q, const LinearMap& id_lift, const Tolerance& tol) {
  if (!std::holds_alternative<QuotientSpace>(id_lift.domain) || !(std::get<QuotientSpace>(id_lift.domain) == q)) {
    throw std::invalid_argument("the lift must be defined on X/J");
  }
  if (!std::holds_alternative<Space>(id_lift.codomain) || std::get<Space>(id_lift.codomain) != q.ambient()) {
    throw std::invalid_argument("the lift must map into X");
  }
  const int n = q.ambient().dim;
  const Matrix class_of_lift = q.coordinate_map() * id_lift.matrix;
  const Matrix identity = Matrix::Identity(q.dim(), q.dim());
  if (q.dim() > 0 && (class_of_lift - identity).cwiseAbs().maxCoeff() >
                         tol.eps_eq * std::max(1.0, id_lift.matrix.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("pi o lift is not the identity on X/J");
  }
  const double lift_norm = operator_norm(id_lift, tol);
  if (lift_norm > 1.0 + tol.eps_eq) {
    throw std::invalid_argument("lift of the identity has norm " + std::to_string(lift_norm) + " > 1");
  }
  const Matrix projection = id_lift.matrix * q.coordinate_map();
  auto cert = verify_selection(q.subspace(), Matrix::Identity(n, n) - projection, tol);
  cert.method = "from_lift";
  return cert;
}

Vector min_norm_preimage(const LinearMap& surjection, const Vector& w, const Tolerance& tol) {
  const auto* x_space = std::get_if<Space>(&surjection.domain);
  if (!x_space) throw UnsupportedError("surjections out of a quotient are not supported");
  const int n = x_space->dim;
  Matrix a;
  Vector b;
  if (const auto* q = std::get_if<QuotientSpace>(&surjection.codomain)) {
    const Matrix annihilator = q->subspace().annihilator();
    a = annihilator.transpose() * surjection.matrix;
    b = annihilator.transpose() * w;
  } else {
    a = surjection.matrix;
    b = w;
  }
  if (numerical_rank(a, tol.eps_rank) != a.rows()) throw std::invalid_argument("psi is not surjective");

  if (x_space->norm == NormKind::Euclid) {
    return a.transpose() * (a * a.transpose()).ldlt().solve(b);
  }
  const auto m = static_cast<int>(a.rows());
  const bool sup = x_space->norm == NormKind::Sup;
  const int extra = sup ? 1 : n;
  lp::Problem prog(n + extra);
  for (int e = 0; e < extra; ++e) {
    prog.objective(n + e) = 1.0;
    prog.nonnegative[static_cast<std::size_t>(n + e)] = true;
  }
  for (int i = 0; i < n; ++i) {
    Vector row = Vector::Zero(n + extra);
    row(i) = 1.0;
    row(n + (sup ? 0 : i)) = -1.0;
    prog.add(row, lp::Relation::LessEqual, 0.0);
    row(i) = -1.0;
    prog.add(row, lp::Relation::LessEqual, 0.0);
  }
  for (int r = 0; r < m; ++r) {
    Vector row = Vector::Zero(n + extra);
    row.head(n) = a.row(r).transpose();
    prog.add(row, lp::Relation::Equal, b(r));
  }
  const auto sol = solve_lp(prog, tol.eps_eq);
  if (sol.status != lp::Status::Optimal) throw std::runtime_error("preimage LP failed");
  return sol.x.head(n);
}

LinearMap lift_from_l1(const LinearMap& S, const LinearMap& surjection, const Tolerance& tol) {
  const auto* y = std::get_if<Space>(&S.domain);
  if (!y || y->norm != NormKind::Sum) throw std::invalid_argument("S must be defined on an l1 space");
  if (!same_domain(S.codomain, surjection.codomain)) {
    throw std::invalid_argument("S and psi have different codomains");
  }
  const auto& x_space = std::get<Space>(surjection.domain);
  Matrix lifted(x_space.dim, S.matrix.cols());
  for (Eigen::Index c = 0; c < S.matrix.cols(); ++c) {
    lifted.col(c) = min_norm_preimage(surjection, S.matrix.col(c), tol);
  }
  return LinearMap(std::move(lifted), S.domain, x_space);
}

RestrictedLift restrict_lift(const Matrix& projection, const LinearMap& lift_of_sp, const LinearMap& S,
                             const Tolerance& tol) {
  const auto& q = quotient_codomain(S, "S");
  const auto m = S.matrix.cols();
  if (projection.rows() != m || projection.cols() != m) throw DimensionError("P must act on the domain of S");
  if ((projection * projection - projection).cwiseAbs().maxCoeff() >
      tol.eps_eq * std::max(1.0, projection.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("P is not a projection");
  }
  if (lift_of_sp.matrix.rows() != q.ambient().dim || lift_of_sp.matrix.cols() != m) {
    throw DimensionError("lift of S o P has the wrong shape");
  }
  const Matrix sp = S.matrix * projection;
  if (composition_residual(q, lift_of_sp.matrix, sp) > residual_tolerance(tol, lift_of_sp.matrix, sp)) {
    throw std::invalid_argument("pi o lift differs from S o P");
  }

  RestrictedLift out;
  out.w1_basis.resize(m, 0);
  for (Eigen::Index c = 0; c < m; ++c) {
    Matrix trial(m, out.w1_basis.cols() + 1);
    trial << out.w1_basis, projection.col(c);
    if (numerical_rank(trial, tol.eps_rank) == trial.cols()) out.w1_basis = std::move(trial);
  }
  out.lift = lift_of_sp.matrix * out.w1_basis;
  const Matrix target = S.matrix * out.w1_basis;
  if (composition_residual(q, out.lift, target) > residual_tolerance(tol, out.lift, target)) {
    throw std::logic_error("restricted lift does not lift S on range(P)");
  }
  return out;
}

LiftReport duality_lift(const LinearMap& S, const Tolerance& tol) {
  const auto& q = quotient_codomain(S, "S");
  if (q.ambient().norm != NormKind::Sup) throw UnsupportedError("duality lift needs an l_inf ambient space");
  const int n = q.ambient().dim;
  const auto support = coordinate_support(q.subspace(), tol);
  if (q.subspace().dim() > 0 && support.empty()) {
    throw UnsupportedError("J is not spanned by standard basis vectors, so it is not a coordinate M-summand");
  }
  // L-projection of l1^n = X* onto the annihilator of J
  Matrix l_projection = Matrix::Identity(n, n);
  for (int i : support) l_projection(i, i) = 0.0;
  // S* acts on functionals vanishing on J as eta -> S^T eta
  const Matrix dual = S.matrix.transpose() * l_projection;
  Matrix t = dual.transpose();
  return make_report(std::move(t), S, q, tol);
}

}  // namespace proxilift
