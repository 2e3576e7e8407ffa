#pragma once

#include "freespec/types.hpp"

#include <random>
#include <vector>

namespace freespec::linalg {

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Eigendecomposition of a hermitian matrix, ascending eigenvalues. Uses the
/// real solver when `field` is real (imaginary parts are ignored).
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix& m, Field field);

double min_eigenvalue(const CMatrix& m, Field field);
double max_eigenvalue(const CMatrix& m, Field field);

CMatrix symmetrize(const CMatrix& m);
double hermitian_deviation(const CMatrix& m);

/// Square root of a hermitian PSD matrix; eigenvalues below zero are clamped.
CMatrix psd_sqrt(const CMatrix& m, Field field);

/// Pseudo-inverse of a hermitian matrix that drops eigenvalues with
/// |lambda| <= cutoff.
CMatrix hermitian_pinv(const CMatrix& m, Field field, double cutoff);

/// Null space of a dense system matrix. Singular values below
/// rel_tol * max(sigma_max, scale) count as zero; an all-zero system has a
/// full null space. `scale` lets callers measure rank against the size of the
/// data the system was built from, so a system that is pure rounding noise is
/// not mistaken for a full-rank one.
template <typename MatT>
struct NullSpace {
  MatT basis;              // columns, orthonormal
  int dim = 0;
  double smallest_kept = 0;  // smallest singular value above the cutoff (0 if none)
  double largest_dropped = 0;
  double sigma_min = 0;    // smallest singular value of the system (0 if cols > rows)
};

NullSpace<RMatrix> null_space(const RMatrix& system, double rel_tol, double scale = 0);
NullSpace<CMatrix> null_space(const CMatrix& system, double rel_tol, double scale = 0);

/// Real-vector view of a complex matrix: real parts only for the real field,
/// real parts followed by imaginary parts otherwise.
RVector flatten_real(const CMatrix& m, Field field);

/// A real-orthonormal basis of the hermitian n x n matrices over `field`
/// (n(n+1)/2 elements for the real field, n^2 for the complex field).
std::vector<CMatrix> hermitian_basis(int n, Field field);

int numerical_rank(const CMatrix& m, double rel_tol);

using Rng = std::mt19937_64;

CMatrix random_hermitian(int n, Field field, Rng& rng);
CMatrix random_gaussian(int rows, int cols, Field field, Rng& rng);
/// Haar-ish random unitary (orthogonal for the real field) via QR.
CMatrix random_unitary(int n, Field field, Rng& rng);
/// rows x cols matrix with orthonormal columns (rows >= cols).
CMatrix random_isometry(int rows, int cols, Field field, Rng& rng);

}  // namespace freespec::linalg
