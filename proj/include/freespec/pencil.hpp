#pragma once

#include "freespec/affine.hpp"
#include "freespec/linalg.hpp"
#include "freespec/tuples.hpp"

namespace freespec {

/// Monic linear pencil L_A(X) = I_m (x) I_n - sum_j A_j (x) X_j with hermitian
/// coefficients A_j of size m x m. The coefficient sits in the outer Kronecker
/// factor, so L_A(X) has m x m blocks of size n x n.
class LinearPencil {
 public:
  LinearPencil() = default;
  explicit LinearPencil(MatrixTuple coefficients);

  const MatrixTuple& coefficients() const { return a_; }
  const CMatrix& operator[](int j) const { return a_[j]; }
  int m() const { return a_.n(); }
  int g() const { return a_.g(); }
  Field field() const { return a_.field(); }

 private:
  MatrixTuple a_;
};

/// Lambda_A(X) = sum_j A_j (x) X_j.
CMatrix evaluate_lambda(const LinearPencil& a, const MatrixTuple& x);
CMatrix evaluate_L(const LinearPencil& a, const MatrixTuple& x);

/// Lambda_A(beta) = sum_j A_j (x) beta_j for a column tuple (n x g matrix,
/// column j is beta_j); the result has shape mn x m.
CMatrix evaluate_lambda_columns(const LinearPencil& a, const CMatrix& beta);

enum class MembershipStatus { kInterior, kBoundary, kOutside };
const char* to_string(MembershipStatus s);

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::kInterior;
  double min_eigenvalue = 0;
  int kernel_dim = 0;
};

MembershipVerdict membership(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {});

/// Orthonormal basis of the numerical kernel of a hermitian PSD matrix:
/// eigenvectors with |lambda| <= tol.ker * max(lambda_max, 1). Throws NotPSD
/// when lambda_min < -tol.feas.
CMatrix kernel_basis(const CMatrix& m, Field field, const Tolerances& tol = {});

/// Level-1 recession cone test: true iff {d in R^g : Lambda_A(d) <= 0} = {0}.
/// Boundedness at higher levels is assumed from this, not proven by it.
bool is_bounded_level1(const LinearPencil& a, const Tolerances& tol = {});

/// Choi-matrix test for Y in mconv(A): does a UCP map send A_j to Y_j?
struct MconvResult {
  bool member = false;
  bool consistent = false;   // the linear constraints admit a hermitian solution
  double margin = 0;         // best lambda_min of the Choi matrix found
  int free_parameters = 0;
  CMatrix choi;              // witness Choi matrix (mn x mn) when consistent
};
MconvResult mconv_membership_report(const MatrixTuple& a, const MatrixTuple& y, const Tolerances& tol = {});
bool mconv_membership(const MatrixTuple& a, const MatrixTuple& y, const Tolerances& tol = {});

/// Necessary-condition sampler for Y in the polar dual of D_A: draws random
/// X in D_A(Y.n) by ray scaling and checks L_X(Y) >= -tol.feas. Throws
/// UnboundedDomain when the level-1 gate fails.
bool polar_dual_check(const LinearPencil& a, const MatrixTuple& y, int samples, std::uint64_t seed,
                      const Tolerances& tol = {});

/// 1 / lambda_max(Lambda_A(D)): the scale at which the ray through D leaves
/// D_A. Throws UnboundedDomain when the ray never leaves.
double boundary_scale(const LinearPencil& a, const MatrixTuple& direction);

enum class SampleKind { kInterior, kBoundary };
/// Random point of D_A(n) by ray scaling a random hermitian direction.
MatrixTuple sample_point(const LinearPencil& a, int n, Field field, SampleKind kind, linalg::Rng& rng);

/// Random hermitian coefficients, redrawn until the level-1 gate passes.
/// Throws UnboundedDomain after max_draws failures (real m = 2, g >= 3 never
/// passes: the coefficients span all of SM_2(R)).
LinearPencil random_bounded_pencil(int m, int g, Field field, linalg::Rng& rng, int max_draws = 200);

}  // namespace freespec
