#pragma once

#include "freespec/affine.hpp"
#include "freespec/pencil.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace freespec::oracles {

// Brute-force falsifiers and grid searches. They share only evaluate_L and
// the tuple types with the library; kernels, null spaces and boundaries are
// recomputed here with different decompositions (JacobiSVD, FullPivLU,
// bisection on eigenvalues). A negative search result is evidence, not proof.

struct DilationWitness {
  CMatrix beta;   // n x g
  RVector psi;
  double alpha = 0;
  double min_eigenvalue = 0;  // lambda_min of L_A at the dilation
};

struct SearchReport {
  bool found = false;
  long trials = 0;
  double best_violation = 0;  // largest lambda_min seen among rejected candidates
  std::string kind;           // how the witness was obtained
  std::optional<DilationWitness> dilation;
  std::optional<MatrixConvexCombination> combination;
};

/// Random search for beta != 0, psi, alpha > 0 with
/// [[X, alpha beta],[alpha beta*, psi]] in D_A. Half of the trials draw beta
/// from an independently computed dilation subspace (when nonzero), the rest
/// uniformly on the unit sphere of C^{ng} (R^{ng} for real problems).
SearchReport search_nontrivial_dilation(const LinearPencil& a, const MatrixTuple& x, long trials,
                                        std::uint64_t seed, double feas_tol = 1e-9);

/// Random search for a proper matrix convex combination exhibiting X as
/// non-matrix-extreme: reducing subspaces, two-point splits along face
/// directions, and mixtures with random boundary samples. n <= 3.
SearchReport refute_matrix_extreme(const LinearPencil& a, const MatrixTuple& x, long trials, std::uint64_t seed,
                                   double feas_tol = 1e-9);

/// sum gamma_i* gamma_i = I within tol.comb and reconstruction within
/// tol.reconstruct * (1 + ||X||_F).
bool verify_combination(const MatrixConvexCombination& c, const MatrixTuple& x, const Tolerances& tol = {});

/// Largest |y| reached along any direction inside the compact level-1 set
/// {y : M(y) >= 0}, from a dense angular grid (k <= 2). Upper bound scaled by 1.5.
double grid_radius(const AffinePencil& p, const RVector& center);

/// sup_y lambda_min(M(y)) by a zooming grid over the box of half-width
/// `radius` around `center` (k <= 2).
struct GridResult {
  double value = 0;
  RVector argmax;
};
GridResult grid_margin(const AffinePencil& p, const RVector& center, double radius, int points = 21,
                       int zooms = 60);

/// max alpha with a psi making the full (unreduced) dilation matrix >= -feas,
/// by bisection on alpha; each trial alpha runs a dense psi grid backed by
/// nested golden-section search (g <= 2). The band absorbs
/// the rounding in lambda_min(L_A(X)) at sampled boundary points.
double grid_max_alpha(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta, int bisections = 40,
                      double feas = 1e-9);

/// Half-length of the longest chord through y inside {M >= -feas}, over a
/// grid of `directions` unit directions (k <= 2), each side found by bisection.
double longest_chord(const AffinePencil& p, const RVector& y, int directions = 720, double feas = 1e-9);

}  // namespace freespec::oracles
