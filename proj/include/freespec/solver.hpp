#pragma once

#include "freespec/affine.hpp"
#include "freespec/pencil.hpp"

namespace freespec {

/// The set Gamma of psi in R^g with [[X, alpha beta],[alpha beta*, psi]] in D_A.
///
/// For beta in the dilation subspace the range of Lambda_A(beta) lies in the
/// range of L_A(X), and the condition reduces by a Schur complement to the
/// m x m pencil (I - alpha^2 Q) - sum_j psi_j A_j with
/// Q = Lambda_A(beta)* L_A(X)^+ Lambda_A(beta). Only Q depends on beta, so it
/// is computed once and rescaled for every trial alpha.
class GammaPencil {
 public:
  GammaPencil(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta, const Tolerances& tol = {});

  AffinePencil at_alpha(double alpha) const;
  const CMatrix& q() const { return q_; }
  /// ||K* Lambda_A(beta)||_F: zero iff beta lies in the dilation subspace.
  double range_defect() const { return range_defect_; }

 private:
  LinearPencil a_;
  Field field_ = Field::kReal;
  CMatrix q_;
  double range_defect_ = 0;
};

/// The same set as an affine pencil of size m(n+1) in psi, without the Schur
/// reduction: L_A([[X, beta],[beta*, 0]]) - sum_j psi_j (A_j (x) E_{n+1,n+1}).
AffinePencil dilation_pencil(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta);

/// [[X_j, beta_j],[beta_j*, psi_j]] for a column tuple beta (n x g) and psi in R^g.
MatrixTuple one_dilation(const MatrixTuple& x, const CMatrix& beta, const RVector& psi);

struct AlphaResult {
  double alpha = 0;     // largest alpha with a feasible psi
  RVector psi;          // feasible psi at alpha
  double margin = 0;    // lambda_min of the reduced Gamma pencil at (alpha, psi)
  int bisections = 0;
};

/// max alpha such that [[X, alpha beta],[alpha beta*, psi]] lies in D_A for
/// some psi. Bracket [0, hi] with hi doubled from 1 (cap 2^30), then 60
/// bisection steps on the sign of the Gamma margin. The returned alpha is on
/// the feasible side of the bracket.
AlphaResult maximize_alpha(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta,
                           const Tolerances& tol = {});

}  // namespace freespec
