#pragma once

#include "freespec/pencil.hpp"

#include <vector>

namespace freespec {

/// {beta in M_{n,1}(F)^g : ker L_A(X) is contained in ker Lambda_A(beta*)}.
/// Each basis element is an n x g matrix whose column j is beta_j; the basis
/// is orthonormal in the stacked Frobenius inner product. `dim` is over the
/// field of the problem.
struct DilationSubspace {
  std::vector<CMatrix> basis;
  int dim = 0;
  int kernel_dim = 0;
  double smallest_kept = 0;
};

DilationSubspace dilation_subspace(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {});

bool free_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {});
bool classical_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {});
bool matrix_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {});

/// Smallest singular value kept above the cutoff in each null-space
/// computation; 0 when the system had no columns or was skipped.
struct ExtremeResiduals {
  double classical = 0;
  double matrix = 0;
  double free = 0;
  double commutant = 0;
};

struct ExtremeReport {
  bool classical = false;
  bool matrix = false;
  bool free = false;
  bool irreducible = false;
  bool interior = false;
  int kernel_dim = 0;
  int dilation_dim = 0;
  int classical_null_dim = 0;
  int matrix_null_dim = 0;
  int commutant_dim = 0;
  ExtremeResiduals residuals;
};

struct ClassifyOptions {
  /// Throw HierarchyViolation unless free => matrix => classical, and at
  /// level 1 (real field, or conjugation_closed) unless classical <=> free.
  bool assert_hierarchy = true;
  /// Caller declares D_A closed under complex conjugation, which enables the
  /// level-1 equivalence check for complex pencils.
  bool conjugation_closed = false;
};

ExtremeReport classify(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {},
                       const ClassifyOptions& opts = {});

}  // namespace freespec
