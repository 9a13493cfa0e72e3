#pragma once

#include <span>
#include <vector>

#include "proxilift/space.hpp"

namespace proxilift {

/// Small dense linear programs, solved by a two-phase tableau simplex with
/// Bland's anti-cycling rule. Sized for a few dozen variables.
namespace lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  Vector coeffs;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// minimize objective . x  subject to the constraints; each variable is
/// either free or restricted to x_i >= 0.
struct Problem {
  Vector objective;
  std::vector<bool> nonnegative;
  std::vector<Constraint> constraints;

  explicit Problem(int num_vars);
  int num_vars() const { return static_cast<int>(objective.size()); }
  void add(Vector coeffs, Relation relation, double rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double value = 0.0;
  Vector x;
};

/// The set of optimal solutions, projected onto a subset of coordinates.
struct OptimalFace {
  int dim = 0;
  /// Average of the distinct optimal points found while probing; lies in the
  /// relative interior for one-dimensional faces.
  Vector center;
  std::vector<Vector> points;
};

}  // namespace lp

lp::Solution solve_lp(const lp::Problem& problem, double eps = 1e-9);

/// Affine dimension of the optimal set of `problem` projected to `coords`.
/// Re-solves with secondary objectives: each step maximizes and minimizes a
/// direction orthogonal to everything found so far, so the loop runs at most
/// coords.size() times.
lp::OptimalFace optimal_face(const lp::Problem& problem, const lp::Solution& optimum,
                             std::span<const int> coords, double eps = 1e-9);

}  // namespace proxilift
