#include "proxilift/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proxilift {
namespace lp {

Problem::Problem(int num_vars)
    : objective(Vector::Zero(num_vars)), nonnegative(static_cast<std::size_t>(num_vars), false) {}

void Problem::add(Vector coeffs, Relation relation, double rhs) {
  if (coeffs.size() != num_vars()) throw DimensionError("constraint has wrong number of coefficients");
  constraints.push_back({std::move(coeffs), relation, rhs});
}

}  // namespace lp

namespace {

constexpr int kMaxIterations = 200000;

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Matrix::Zero(rows + 1, cols + 1)), basis_(rows) {}

  Matrix& data() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double factor = t_(i, c);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule on the objective row (last row); columns >= limit never enter.
  // Returns false when unbounded.
  bool run(Eigen::Index limit, double eps) {
    const Eigen::Index m = rows();
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (t_(m, j) < -eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= eps) continue;
        const double ratio = t_(i, rhs_col()) / a;
        if (leave < 0 || ratio < best - 1e-12 * (1.0 + std::abs(best)) ||
            (std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best)) &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

lp::Solution solve_lp(const lp::Problem& problem, double eps) {
  using lp::Relation;
  const int n = problem.num_vars();
  const auto m = static_cast<Eigen::Index>(problem.constraints.size());

  // column layout: split free variables, then one slack per inequality
  std::vector<Eigen::Index> pos_col(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> neg_col(static_cast<std::size_t>(n), -1);
  Eigen::Index cols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[static_cast<std::size_t>(j)] = cols++;
    if (!problem.nonnegative[static_cast<std::size_t>(j)]) neg_col[static_cast<std::size_t>(j)] = cols++;
  }
  const Eigen::Index structural = cols;
  for (const auto& c : problem.constraints) {
    if (c.relation != Relation::Equal) ++cols;
  }
  const Eigen::Index artificial0 = cols;
  const Eigen::Index total = cols + m;

  Tableau tab(m, total);
  Matrix& t = tab.data();
  const Eigen::Index rhs = tab.rhs_col();
  Eigen::Index slack = structural;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& c = problem.constraints[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      t(i, pos_col[static_cast<std::size_t>(j)]) = c.coeffs(j);
      if (neg_col[static_cast<std::size_t>(j)] >= 0) t(i, neg_col[static_cast<std::size_t>(j)]) = -c.coeffs(j);
    }
    if (c.relation == Relation::LessEqual) t(i, slack++) = 1.0;
    if (c.relation == Relation::GreaterEqual) t(i, slack++) = -1.0;
    t(i, rhs) = c.rhs;
    if (t(i, rhs) < 0.0) t.row(i) *= -1.0;
    t(i, artificial0 + i) = 1.0;
    tab.basis()[static_cast<std::size_t>(i)] = artificial0 + i;
  }

  double scale = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(t(i, rhs)));

  // phase 1: minimize the sum of artificials
  for (Eigen::Index j = 0; j < artificial0; ++j) t(m, j) = -t.col(j).head(m).sum();
  t(m, rhs) = -t.col(rhs).head(m).sum();
  tab.run(artificial0, eps * 1e-2);

  lp::Solution out;
  if (-t(m, rhs) > eps * scale) {
    out.status = lp::Status::Infeasible;
    return out;
  }
  // drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant and stay inert
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < artificial0) continue;
    Eigen::Index best_col = -1;
    double best = eps * 1e-2;
    for (Eigen::Index j = 0; j < artificial0; ++j) {
      if (std::abs(t(i, j)) > best) {
        best = std::abs(t(i, j));
        best_col = j;
      }
    }
    if (best_col >= 0) tab.pivot(i, best_col);
  }

  // phase 2
  Vector cost = Vector::Zero(total);
  for (int j = 0; j < n; ++j) {
    cost(pos_col[static_cast<std::size_t>(j)]) = problem.objective(j);
    if (neg_col[static_cast<std::size_t>(j)] >= 0) cost(neg_col[static_cast<std::size_t>(j)]) = -problem.objective(j);
  }
  t.row(m).setZero();
  for (Eigen::Index j = 0; j < total; ++j) t(m, j) = cost(j);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double cb = cost(tab.basis()[static_cast<std::size_t>(i)]);
    if (cb != 0.0) t.row(m) -= cb * t.row(i);
  }
  if (!tab.run(artificial0, eps * 1e-2)) {
    out.status = lp::Status::Unbounded;
    return out;
  }

  Vector columns = Vector::Zero(total);
  for (Eigen::Index i = 0; i < m; ++i) columns(tab.basis()[static_cast<std::size_t>(i)]) = t(i, rhs);
  out.x = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    out.x(j) = columns(pos_col[static_cast<std::size_t>(j)]);
    if (neg_col[static_cast<std::size_t>(j)] >= 0) out.x(j) -= columns(neg_col[static_cast<std::size_t>(j)]);
  }
  out.value = problem.objective.dot(out.x);
  out.status = lp::Status::Optimal;
  return out;
}

lp::OptimalFace optimal_face(const lp::Problem& problem, const lp::Solution& optimum,
                             std::span<const int> coords, double eps) {
  if (optimum.status != lp::Status::Optimal) throw std::invalid_argument("optimal_face needs an optimal solution");
  const auto q = static_cast<Eigen::Index>(coords.size());
  auto project = [&](const Vector& x) {
    Vector y(q);
    for (Eigen::Index i = 0; i < q; ++i) y(i) = x(coords[static_cast<std::size_t>(i)]);
    return y;
  };

  lp::Problem face = problem;
  const double value_scale = std::max(1.0, std::abs(optimum.value));
  face.add(problem.objective, lp::Relation::LessEqual, optimum.value + 1e-3 * eps * value_scale);

  lp::OptimalFace out;
  const Vector base = project(optimum.x);
  out.points.push_back(base);
  const double threshold = eps * std::max(1.0, base.cwiseAbs().maxCoeff());

  std::vector<Vector> spanned;  // orthonormal, hull directions and equality normals together
  int hull_dim = 0;
  auto orthogonalize = [&](Vector v) {
    for (const auto& s : spanned) v -= s.dot(v) * s;
    return v;
  };
  auto add_point = [&](const Vector& p) {
    for (const auto& existing : out.points) {
      if ((existing - p).cwiseAbs().maxCoeff() <= threshold) return;
    }
    out.points.push_back(p);
  };

  while (static_cast<Eigen::Index>(spanned.size()) < q) {
    // next probe direction: the standard basis vector with the largest
    // component outside everything spanned so far
    Vector dir;
    double best = -1.0;
    for (Eigen::Index i = 0; i < q; ++i) {
      Vector e = orthogonalize(Vector::Unit(q, i));
      if (e.norm() > best + 1e-12) {
        best = e.norm();
        dir = e;
      }
    }
    dir /= dir.norm();

    Vector objective = Vector::Zero(problem.num_vars());
    for (Eigen::Index i = 0; i < q; ++i) objective(coords[static_cast<std::size_t>(i)]) = dir(i);
    const double at_base = dir.dot(base);

    lp::Problem low = face;
    low.objective = objective;
    lp::Problem high = face;
    high.objective = -objective;
    const auto lo = solve_lp(low, eps);
    const auto hi = solve_lp(high, eps);
    if (lo.status != lp::Status::Optimal || hi.status != lp::Status::Optimal) {
      throw std::runtime_error("optimal face is unbounded or lost feasibility while probing");
    }
    const Vector plo = project(lo.x);
    const Vector phi = project(hi.x);
    const double spread_lo = at_base - dir.dot(plo);
    const double spread_hi = dir.dot(phi) - at_base;
    if (spread_lo > threshold || spread_hi > threshold) {
      const Vector& far = spread_hi >= spread_lo ? phi : plo;
      Vector d = orthogonalize(far - base);
      spanned.push_back(d / d.norm());
      ++hull_dim;
      add_point(plo);
      add_point(phi);
    } else {
      spanned.push_back(dir);
    }
  }

  out.dim = hull_dim;
  out.center = Vector::Zero(q);
  for (const auto& p : out.points) out.center += p;
  out.center /= static_cast<double>(out.points.size());
  return out;
}

}  // namespace proxilift
