#pragma once

#include "proxilift/linear_map.hpp"
#include "proxilift/quotient.hpp"
#include "proxilift/selection.hpp"

namespace proxilift {

/// pi : X -> X/J, x -> x + J.
LinearMap quotient_map(const QuotientSpace& q);

/// psi : X/J -> X, [x] -> x - p(x). Well defined and isometric when p is a
/// linear selection; rejects uncertified selections with std::invalid_argument.
LinearMap iso_from_selection(const QuotientSpace& q, const SelectionCertificate& p, const Tolerance& tol = {});

/// Outcome of lifting S : Y -> X/J to T : Y -> X.
struct LiftReport {
  LinearMap T;
  bool composition_ok = false;
  /// max |coset coordinate| of the columns of T - S; zero iff pi o T = S.
  double composition_residual = 0.0;
  double norm_S = 0.0;
  double norm_T = 0.0;
  bool norm_preserved = false;
};

/// Largest coset coordinate of lift - target over all columns.
double composition_residual(const QuotientSpace& q, const Matrix& lift, const Matrix& target);

/// T = psi o S.
LiftReport lift_operator(const LinearMap& S, const SelectionCertificate& p, const Tolerance& tol = {});

/// ||S|| <= ||T|| for a lift T of S. Throws std::invalid_argument when
/// pi o T != S.
bool lift_norm_lower_bound_check(const LinearMap& S, const LinearMap& T, const Tolerance& tol = {});

/// Extracts p = I - Id_lift o pi from a norm-one lift of the identity of X/J
/// and certifies it.
SelectionCertificate selection_from_lift(const QuotientSpace& q, const LinearMap& id_lift,
                                         const Tolerance& tol = {});

/// Lifts S : l1^k -> W through a surjection psi : X -> W by choosing a
/// minimum-norm preimage of every S(e_i). W may be a space or a quotient.
LinearMap lift_from_l1(const LinearMap& S, const LinearMap& surjection, const Tolerance& tol = {});

/// A minimum-norm x with psi(x) = w (or psi(x) - w in J' for a quotient
/// codomain).
Vector min_norm_preimage(const LinearMap& surjection, const Vector& w, const Tolerance& tol = {});

/// Lift of S restricted to W1 = range(P).
struct RestrictedLift {
  /// Columns span W1; the lift acts on coordinates in this basis.
  Matrix w1_basis;
  /// n x dim(W1): lift_of_SP applied to the basis of W1.
  Matrix lift;
};

/// Given a projection P : W -> W1 and a lift of S o P, returns that lift
/// composed with the inclusion of W1. Checks P o P = P and
/// pi o lift_of_SP = S o P (std::invalid_argument otherwise).
RestrictedLift restrict_lift(const Matrix& projection, const LinearMap& lift_of_sp, const LinearMap& S,
                             const Tolerance& tol = {});

/// Lift through duality for a coordinate M-summand J = span{e_i : i in I} of
/// l_inf^n: with P the L-projection of l1^n onto the annihilator of J,
/// T = (S* o P)*, adjoints realised as transposes.
LiftReport duality_lift(const LinearMap& S, const Tolerance& tol = {});

}  // namespace proxilift
