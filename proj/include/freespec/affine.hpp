#pragma once

#include "freespec/types.hpp"

#include <iosfwd>
#include <vector>

namespace freespec {

/// M(y) = M0 + sum_j y_j M_j over real scalar variables y in R^k.
struct AffinePencil {
  CMatrix constant;
  std::vector<CMatrix> directions;
  Field field = Field::kReal;

  int dim() const { return static_cast<int>(constant.rows()); }
  int num_vars() const { return static_cast<int>(directions.size()); }
  CMatrix at(const RVector& y) const;
  /// sum_j d_j M_j
  CMatrix linear_part(const RVector& d) const;
  /// Throws InvalidTuple unless every matrix is hermitian of the same size.
  void validate(double sym_tol = 1e-9) const;
};

struct SolveStatus {
  bool converged = false;
  bool unbounded = false;  // the margin exceeded MarginOptions::unbounded_cap
  int iterations = 0;
  double margin = 0;       // lambda_min(M(witness))
  RVector witness;
};

enum class MarginMethod {
  kBarrier,        // log-det barrier path following on max t s.t. M(y) - tI >= 0
  kSupergradient,  // ascent along v v* for a unit lambda_min eigenvector v
};

struct MarginOptions {
  MarginMethod method = MarginMethod::kBarrier;
  int max_iterations = 5000;
  double stall_tol = 1e-9;       // supergradient: stop when the best margin stalls
  double gap_tol = 1e-13;        // barrier: final duality-gap bound dim * mu
  double unbounded_cap = 1e6;
  std::ostream* trace = nullptr;  // JSON lines, one per iteration
};

/// Approximately sup_y lambda_min(M(y)). The returned margin is always the
/// exact lambda_min at the returned witness, so it is a certified lower bound.
SolveStatus feasibility_margin(const AffinePencil& p, const MarginOptions& opts = {},
                               const RVector* start = nullptr);

/// max { t >= 0 : M(y0 + t d) >= 0 }. Throws UnboundedDirection when no finite
/// step exists below 2^30 and InfeasibleStart when M(y0) is not PSD within tol.feas.
double max_step(const AffinePencil& p, const RVector& y0, const RVector& d, const Tolerances& tol = {});

/// Walks from a feasible start to an extreme point of the compact
/// spectrahedron {y : M(y) >= 0}. At every iterate the kernel K of M(y) is
/// computed and the homogeneous system (sum sigma_j M_j) K = 0 is solved; a
/// nonzero sigma gives a line through y inside the face, and a maximal step
/// along it enlarges the kernel. Stops when only sigma = 0 solves the system.
struct ExtremePointResult {
  RVector point;
  int steps = 0;
  int kernel_dim = 0;
  double sigma_residual = 0;  // smallest kept singular value of the final sigma-system
};
ExtremePointResult extreme_point_of_spectrahedron(const AffinePencil& p, const RVector& start,
                                                  const Tolerances& tol = {});

/// Real dimension of the null space of the sigma-system at y.
int face_dimension(const AffinePencil& p, const RVector& y, const Tolerances& tol = {});

}  // namespace freespec
