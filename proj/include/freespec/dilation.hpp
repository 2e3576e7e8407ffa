#pragma once

#include "freespec/extreme.hpp"
#include "freespec/solver.hpp"

#include <cstdint>
#include <vector>

namespace freespec {

/// One row-and-column dilation Y = [[X, beta_hat],[beta_hat*, psi_hat]].
struct DilationCandidate {
  CMatrix beta_hat;  // n x g, column j is beta_hat_j
  RVector psi_hat;
  MatrixTuple y_hat;
  int dim_before = 0;  // dim of the dilation subspace at X
  int dim_after = 0;   // ... and at y_hat
  double alpha = 0;    // maximize_alpha on the chosen unit beta
  bool retried = false;
};

struct DilationOptions {
  std::uint64_t seed = 0;
  /// Block-diagonalize X before dilating and decompose each block separately.
  bool presplit = false;
};

/// A maximal 1-dilation of X, with strictly smaller dilation subspace.
/// Real field only. Throws AlreadyMaximal, FieldUnsupported, OutsideDomain or
/// DescentFailure (after one retry at tol.ker * 0.1).
DilationCandidate maximal_one_dilation(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {},
                                       const DilationOptions& opts = {});

/// U unitary with U* Y U block diagonal, blocks irreducible. `offsets[i]` is
/// the first column of block i in U.
struct BlockDiagonalization {
  CMatrix u;
  std::vector<MatrixTuple> blocks;
  std::vector<int> offsets;
  double off_block_residual = 0;
};
BlockDiagonalization block_diagonalize(const MatrixTuple& y, const Tolerances& tol = {}, std::uint64_t seed = 0);

struct Decomposition {
  std::vector<MatrixTuple> summands;
  std::vector<CMatrix> gammas;  // gamma_i of shape n_i x n
  std::vector<DilationCandidate> dilation_trace;
  std::vector<bool> certified;  // free_extreme_test on each summand
  int total_size = 0;
  int steps = 0;
  double residual = 0;          // ||sum gamma_i* F_i gamma_i - X||_F

  MatrixConvexCombination combination() const;
};

/// X as a matrix convex combination of free extreme points of D_A.
Decomposition decompose_to_free_extremes(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol = {},
                                         const DilationOptions& opts = {});

}  // namespace freespec
