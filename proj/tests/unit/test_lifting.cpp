#include <doctest.h>

#include "proxilift/lifting.hpp"
#include "proxilift/projection.hpp"
#include "proxilift/random.hpp"

using namespace proxilift;

namespace {

const Space linf1(1, NormKind::Sup);
const Space linf2(2, NormKind::Sup);
const Space linf3(3, NormKind::Sup);
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Subspace coordinate(const Space& x, int k) {
  Matrix b = Matrix::Zero(x.dim, k);
  for (int i = 0; i < k; ++i) b(i, i) = 1.0;
  return Subspace(x, b);
}

SelectionCertificate selection_for(const Subspace& j) {
  auto s = find_linear_selection(j);
  REQUIRE(s.found());
  return *s.selection;
}

}  // namespace

TEST_CASE("quotient map") {
  const QuotientSpace q(Subspace::span(linf2, {v2(1, 2)}));
  CHECK(q.class_residual(v2(-2, -4)) < 1e-12);
  CHECK(q.quotient_norm(v2(1, 5)) == doctest::Approx(1.0));
  CHECK(operator_norm(quotient_map(q)) == doctest::Approx(1.0));
  CHECK(q.dim() == 1);
}

TEST_CASE("the lift psi of a selection") {
  const auto j = Subspace::span(linf2, {v2(1, 2)});
  const QuotientSpace q(j);
  const auto p = selection_for(j);
  const LinearMap psi = iso_from_selection(q, p);

  auto psi_of = [&](const Vector& x) -> Vector { return psi.matrix * q.coordinates(x); };
  CHECK(psi_of(v2(2, 4)).norm() < 1e-12);
  CHECK((psi_of(v2(1, 5)) - v2(-1, 1)).norm() < 1e-12);
  CHECK(operator_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));

  // psi o pi = I - p, pi o psi = identity of X/J
  CHECK(max_abs(psi.matrix * q.coordinate_map() - (Matrix::Identity(2, 2) - p.p)) < 1e-12);
  CHECK(max_abs(q.coordinate_map() * psi.matrix - Matrix::Identity(1, 1)) < 1e-12);

  for (int t = 0; t < 100; ++t) {
    Rng rng = trial_rng(31, static_cast<std::uint64_t>(t));
    const Vector x = uniform_vector(rng, 2) * 3;
    const Vector shifted = x + j.basis().col(0) * (5.0 * uniform_vector(rng, 1)(0));
    CHECK((psi_of(x) - psi_of(shifted)).norm() < 1e-12);
    CHECK(norm(linf2, psi_of(x)) == doctest::Approx(q.quotient_norm(x)).epsilon(1e-12));
  }

  SelectionCertificate bad = p;
  bad.violations.push_back("forged");
  CHECK_THROWS_AS(iso_from_selection(q, bad), std::invalid_argument);
}

TEST_CASE("lift_operator examples") {
  const auto j = Subspace::span(linf2, {v2(1, 2)});
  const QuotientSpace q(j);
  const auto p = selection_for(j);

  const auto zero = lift_operator(LinearMap(Matrix::Zero(2, 1), linf1, q), p);
  CHECK(max_abs(zero.T.matrix) == 0.0);
  CHECK(zero.norm_S == 0.0);
  CHECK(zero.norm_T == 0.0);

  const auto one = lift_operator(LinearMap(v2(1, 5), linf1, q), p);
  CHECK((one.T.matrix.col(0) - v2(-1, 1)).norm() < 1e-12);
  CHECK(one.norm_S == doctest::Approx(1.0));
  CHECK(one.norm_T == doctest::Approx(1.0));
  CHECK(one.composition_ok);
  CHECK(one.norm_preserved);
}

TEST_CASE("lifts through linf^3 / span e1 preserve the norm") {
  const auto j = coordinate(linf3, 1);
  const QuotientSpace q(j);
  const auto p = selection_for(j);
  for (int t = 0; t < 500; ++t) {
    Rng rng = trial_rng(32, static_cast<std::uint64_t>(t));
    const Space y(uniform_int(rng, 1, 3), uniform_int(rng, 0, 1) ? NormKind::Sup : NormKind::Sum);
    const LinearMap S(uniform_matrix(rng, 3, y.dim) * 3.0, y, q);
    const auto r = lift_operator(S, p);
    CHECK(r.composition_ok);
    CHECK(r.norm_preserved);
  }
}

TEST_CASE("every lift is at least as large as S") {
  const auto j = Subspace::span(linf2, {v2(1, 2)});
  const QuotientSpace q(j);
  const auto p = selection_for(j);
  for (int t = 0; t < 100; ++t) {
    Rng rng = trial_rng(33, static_cast<std::uint64_t>(t));
    const LinearMap S(uniform_matrix(rng, 2, 2), linf2, q);
    const auto best = lift_operator(S, p);
    CHECK(lift_norm_lower_bound_check(S, best.T));
    const Matrix other = best.T.matrix + j.basis() * uniform_matrix(rng, 1, 2) * 4.0;
    CHECK(lift_norm_lower_bound_check(S, LinearMap(other, linf2, linf2)));
    CHECK(operator_norm(LinearMap(other, linf2, linf2)) >= best.norm_T - 1e-12);
  }
  const LinearMap zero(Matrix::Zero(2, 2), linf2, q);
  CHECK(lift_norm_lower_bound_check(zero, LinearMap(j.basis() * v2(1, -3).transpose(), linf2, linf2)));
  CHECK_THROWS_AS(lift_norm_lower_bound_check(zero, LinearMap(Matrix::Identity(2, 2), linf2, linf2)),
                  std::invalid_argument);
}

TEST_CASE("selections are recovered from lifts of the identity") {
  SUBCASE("round trip through psi") {
    for (int t = 0; t < 80; ++t) {
      Rng rng = trial_rng(34, static_cast<std::uint64_t>(t));
      const Space x(uniform_int(rng, 2, 3), uniform_int(rng, 0, 1) ? NormKind::Sup : NormKind::Sum);
      const Subspace j = random_subspace(rng, x, uniform_int(rng, 1, x.dim - 1));
      const auto s = find_linear_selection(j);
      if (!s.found()) continue;
      const QuotientSpace q(j);
      const auto back = selection_from_lift(q, iso_from_selection(q, *s.selection));
      CHECK(back.certified());
      CHECK(max_abs(back.p - s.selection->p) <= 1e-12);
    }
  }
  SUBCASE("Euclidean coset representatives") {
    const Space l2(3, NormKind::Euclid);
    Rng rng = trial_rng(35, 0);
    const Subspace j = random_subspace(rng, l2, 1);
    const QuotientSpace q(j);
    const Matrix perp = Matrix::Identity(3, 3) - j.orthogonal_projector();
    const LinearMap lift(perp * q.complement_basis(), q, l2);
    const auto p = selection_from_lift(q, lift);
    CHECK(p.certified());
    CHECK(max_abs(p.p - j.orthogonal_projector()) < 1e-12);
  }
  SUBCASE("lifts of norm above one are refused") {
    const auto j = Subspace::span(linf2, {v2(1, 2)});
    const QuotientSpace q(j);
    const LinearMap psi = iso_from_selection(q, selection_for(j));
    // adding a J-valued term keeps pi o lift = id but inflates the norm
    const double target = 1.2;
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = (lo + hi) / 2;
      const LinearMap trial(psi.matrix + mid * j.basis(), q, linf2);
      (operator_norm(trial) < target ? lo : hi) = mid;
    }
    const LinearMap inflated(psi.matrix + hi * j.basis(), q, linf2);
    CHECK(operator_norm(inflated) == doctest::Approx(target).epsilon(1e-9));
    CHECK_THROWS_AS(selection_from_lift(q, inflated), std::invalid_argument);
    CHECK_THROWS_AS(selection_from_lift(q, LinearMap(2.0 * psi.matrix, q, linf2)), std::invalid_argument);
  }
}

TEST_CASE("lifting from l1 through surjections") {
  const Space l1_2(2, NormKind::Sum);
  SUBCASE("identity surjection") {
    const Matrix s = (Matrix(2, 2) << 1, -2, 0.5, 3).finished();
    const LinearMap S(s, l1_2, linf2);
    const LinearMap lifted = lift_from_l1(S, LinearMap(Matrix::Identity(2, 2), linf2, linf2));
    CHECK(max_abs(lifted.matrix - s) < 1e-9);
  }
  SUBCASE("through the quotient map onto linf^2 / span(1,2)") {
    const QuotientSpace q(Subspace::span(linf2, {v2(1, 2)}));
    // e_1 goes to the class of the first complement vector
    const LinearMap S(q.complement_basis(), Space(1, NormKind::Sum), q);
    const LinearMap lifted = lift_from_l1(S, quotient_map(q));
    CHECK(composition_residual(q, lifted.matrix, S.matrix) < 1e-9);
    CHECK(operator_norm(lifted) == doctest::Approx(operator_norm(S)).epsilon(1e-9));
    CHECK(in_metric_complement(q.subspace(), lifted.matrix.col(0)));
  }
  SUBCASE("random surjections linf^3 -> linf^2") {
    for (int t = 0; t < 100; ++t) {
      Rng rng = trial_rng(36, static_cast<std::uint64_t>(t));
      const Matrix psi = uniform_matrix(rng, 2, 3);
      if (numerical_rank(psi, 1e-6) < 2) continue;
      const LinearMap S(uniform_matrix(rng, 2, 2), l1_2, linf2);
      const LinearMap lifted = lift_from_l1(S, LinearMap(psi, linf3, linf2));
      CHECK(max_abs(psi * lifted.matrix - S.matrix) < 1e-9);
    }
  }
  SUBCASE("non-surjective maps are refused") {
    Matrix psi = Matrix::Zero(2, 3);
    psi(0, 0) = 1;
    const LinearMap S(Matrix::Identity(2, 2), l1_2, linf2);
    CHECK_THROWS_AS(lift_from_l1(S, LinearMap(psi, linf3, linf2)), std::invalid_argument);
  }
  SUBCASE("the domain must be an l1 space") {
    const LinearMap S(Matrix::Identity(2, 2), linf2, linf2);
    CHECK_THROWS_AS(lift_from_l1(S, LinearMap(Matrix::Identity(2, 2), linf2, linf2)), std::invalid_argument);
  }
}

TEST_CASE("restricting a lift of S o P to range(P)") {
  const auto j = Subspace::span(linf2, {v2(1, 2)});
  const QuotientSpace q(j);
  const auto p = selection_for(j);
  const Matrix psi = Matrix::Identity(2, 2) - p.p;

  auto check_projection = [&](const Space& w, const Matrix& proj, const Matrix& s) {
    const LinearMap S(s, w, q);
    const LinearMap lift_sp(psi * s * proj, w, linf2);
    const auto r = restrict_lift(proj, lift_sp, S);
    CHECK(r.w1_basis.cols() == numerical_rank(proj, 1e-10));
    CHECK(composition_residual(q, r.lift, s * r.w1_basis) < 1e-9);
  };
  SUBCASE("P = identity") {
    const Matrix s = (Matrix(2, 2) << 1, 0, 3, -1).finished();
    const LinearMap S(s, linf2, q);
    const LinearMap lift_sp(psi * s, linf2, linf2);
    const auto r = restrict_lift(Matrix::Identity(2, 2), lift_sp, S);
    CHECK(max_abs(r.lift - lift_sp.matrix * r.w1_basis) == 0.0);
    CHECK(r.w1_basis.cols() == 2);
  }
  SUBCASE("coordinate projection onto span e1") {
    Matrix proj = Matrix::Zero(2, 2);
    proj(0, 0) = 1;
    check_projection(linf2, proj, (Matrix(2, 2) << 1, 2, 3, 4).finished());
  }
  SUBCASE("random rank-one projections on linf^3") {
    for (int t = 0; t < 50; ++t) {
      Rng rng = trial_rng(37, static_cast<std::uint64_t>(t));
      const Vector u = uniform_vector(rng, 3);
      Vector v = uniform_vector(rng, 3);
      if (std::abs(v.dot(u)) < 0.1) v += u;
      const Matrix proj = u * v.transpose() / v.dot(u);
      check_projection(linf3, proj, uniform_matrix(rng, 2, 3));
    }
  }
  SUBCASE("preconditions") {
    const LinearMap S(Matrix::Identity(2, 2), linf2, q);
    CHECK_THROWS_AS(restrict_lift(2.0 * Matrix::Identity(2, 2), LinearMap(psi, linf2, linf2), S),
                    std::invalid_argument);
    CHECK_THROWS_AS(restrict_lift(Matrix::Identity(2, 2), LinearMap(Matrix::Zero(2, 2), linf2, linf2), S),
                    std::invalid_argument);
  }
}

TEST_CASE("duality lift for coordinate M-summands") {
  SUBCASE("S = 0") {
    const QuotientSpace q(coordinate(linf2, 1));
    const auto r = duality_lift(LinearMap(Matrix::Zero(2, 1), linf1, q));
    CHECK(max_abs(r.T.matrix) == 0.0);
  }
  SUBCASE("span e1 in linf^2, S(1) = [(0, 3)]") {
    const auto j = coordinate(linf2, 1);
    const QuotientSpace q(j);
    const LinearMap S(v2(0, 3), linf1, q);
    const auto dual = duality_lift(S);
    CHECK((dual.T.matrix.col(0) - v2(0, 3)).norm() < 1e-12);
    const auto psi = lift_operator(S, selection_for(j));
    CHECK(max_abs(dual.T.matrix - psi.T.matrix) < 1e-12);
    CHECK(dual.norm_preserved);
  }
  SUBCASE("agrees with the psi lift on random operators") {
    for (int k = 1; k <= 2; ++k) {
      const Space x(k + 1, NormKind::Sup);
      const auto j = coordinate(x, k);
      const QuotientSpace q(j);
      const auto p = selection_for(j);
      for (int t = 0; t < 100; ++t) {
        Rng rng = trial_rng(38, static_cast<std::uint64_t>(t));
        const Space y(uniform_int(rng, 1, 3), NormKind::Sup);
        const LinearMap S(uniform_matrix(rng, x.dim, y.dim), y, q);
        const auto dual = duality_lift(S);
        const auto psi = lift_operator(S, p);
        CHECK(max_abs(dual.T.matrix - psi.T.matrix) < 1e-9);
        CHECK(dual.norm_preserved);
        CHECK(dual.composition_ok);
      }
    }
  }
  SUBCASE("non-coordinate subspaces are refused") {
    const QuotientSpace q(Subspace::span(linf2, {v2(1, 2)}));
    CHECK_THROWS_AS(duality_lift(LinearMap(Matrix::Zero(2, 1), linf1, q)), UnsupportedError);
    const QuotientSpace l1(coordinate(Space(2, NormKind::Sum), 1));
    CHECK_THROWS_AS(duality_lift(LinearMap(Matrix::Zero(2, 1), linf1, l1)), UnsupportedError);
  }
}
