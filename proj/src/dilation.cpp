#include "freespec/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace freespec {

namespace {

DilationCandidate dilate_once(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol,
                              std::uint64_t seed) {
  DilationCandidate c;
  const auto sub = dilation_subspace(a, x, tol);
  c.dim_before = sub.dim;
  if (sub.dim == 0) throw Error(ErrorCode::kAlreadyMaximal, "dilation subspace is trivial");

  CMatrix beta = sub.basis.front().real().cast<Complex>();
  AlphaResult best = maximize_alpha(a, x, beta, tol);
  linalg::Rng rng(seed);
  std::normal_distribution<double> normal;
  for (int draw = 0; best.alpha < 1e-10 && draw < 8; ++draw) {
    CMatrix b = CMatrix::Zero(x.n(), a.g());
    for (const auto& v : sub.basis) b += normal(rng) * v.real().cast<Complex>();
    beta = b / b.norm();
    best = maximize_alpha(a, x, beta, tol);
  }
  if (best.alpha < 1e-10) throw Error(ErrorCode::kDescentFailure, "every sampled beta has alpha* ~ 0");

  // Gamma_{X, beta_hat} with beta_hat = alpha* beta is the reduced pencil at
  // alpha*, so the bisection witness is feasible for it.
  const GammaPencil gamma(a, x, beta, tol);
  const AffinePencil gp = gamma.at_alpha(best.alpha);
  const auto ext = extreme_point_of_spectrahedron(gp, best.psi, tol);

  c.alpha = best.alpha;
  c.beta_hat = best.alpha * beta;
  c.psi_hat = ext.point;
  c.y_hat = one_dilation(x, c.beta_hat, c.psi_hat);
  c.dim_after = dilation_subspace(a, c.y_hat, tol).dim;
  if (c.dim_after >= c.dim_before) {
    throw Error(ErrorCode::kDescentFailure, "dilation subspace did not shrink: " + std::to_string(c.dim_before) +
                                                " -> " + std::to_string(c.dim_after));
  }
  return c;
}

void require_real(const LinearPencil& a, const MatrixTuple& x) {
  if (a.field() != Field::kReal || x.field() != Field::kReal)
    throw Error(ErrorCode::kFieldUnsupported, "dilation and decomposition are implemented over the reals");
}

}  // namespace

DilationCandidate maximal_one_dilation(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol,
                                       const DilationOptions& opts) {
  require_real(a, x);
  try {
    return dilate_once(a, x, tol, opts.seed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDescentFailure) throw;
  }
  Tolerances tight = tol;
  tight.ker *= 0.1;
  auto c = dilate_once(a, x, tight, opts.seed + 1);
  c.retried = true;
  return c;
}

BlockDiagonalization block_diagonalize(const MatrixTuple& y, const Tolerances& tol, std::uint64_t seed) {
  BlockDiagonalization out;
  const int n = y.n();
  if (n == 0) {
    out.u = CMatrix(0, 0);
    return out;
  }
  linalg::Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CMatrix> pieces;

  std::function<void(const MatrixTuple&, const CMatrix&)> split = [&](const MatrixTuple& t, const CMatrix& w) {
    const auto comm = self_adjoint_commutant(t, tol);
    if (comm.dim <= 1) {
      out.blocks.push_back(t);
      pieces.push_back(w);
      return;
    }
    std::ostringstream stats;
    for (int attempt = 0; attempt < 20; ++attempt) {
      CMatrix s = CMatrix::Zero(t.n(), t.n());
      for (const auto& b : comm.basis) s += normal(rng) * b;
      const auto eig = linalg::hermitian_eigen(s, t.field());
      const double spread = eig.values(eig.values.size() - 1) - eig.values(0);
      if (spread <= 1e-12) continue;
      // Gaps must be clearly zero or clearly open; anything in between is
      // an ambiguous clustering and the draw is discarded.
      std::vector<int> cuts;
      bool ambiguous = false;
      double worst = 0;
      for (int i = 0; i + 1 < eig.values.size(); ++i) {
        const double gap = (eig.values(i + 1) - eig.values(i)) / spread;
        if (gap > 1e-3) {
          cuts.push_back(i + 1);
        } else if (gap > 1e-7) {
          ambiguous = true;
          worst = std::max(worst, gap);
        }
      }
      if (ambiguous || cuts.empty()) {
        stats << " draw " << attempt << ": " << cuts.size() << " cuts, ambiguous gap " << worst << ";";
        continue;
      }
      cuts.push_back(static_cast<int>(eig.values.size()));
      int begin = 0;
      for (int end : cuts) {
        const CMatrix v = eig.vectors.middleCols(begin, end - begin);
        split(t.compress(v), w * v);
        begin = end;
      }
      return;
    }
    throw Error(ErrorCode::kBlockingFailure,
                "no clean eigenvalue clustering of a commutant element (dim " + std::to_string(comm.dim) + "):" +
                    stats.str());
  };
  split(y, CMatrix::Identity(n, n));

  out.u = CMatrix(n, n);
  int offset = 0;
  for (const auto& p : pieces) {
    out.offsets.push_back(offset);
    out.u.middleCols(offset, p.cols()) = p;
    offset += static_cast<int>(p.cols());
  }
  double resid = 0;
  for (int j = 0; j < y.g(); ++j) {
    CMatrix r = out.u.adjoint() * y[j] * out.u;
    for (size_t b = 0; b < out.blocks.size(); ++b) {
      const int o = out.offsets[b];
      const int s = out.blocks[b].n();
      r.block(o, o, s, s).setZero();
    }
    resid += r.squaredNorm();
  }
  out.off_block_residual = std::sqrt(resid);
  if (out.off_block_residual > tol.block * (1.0 + y.norm())) {
    throw Error(ErrorCode::kBlockingFailure,
                "off-block residual " + std::to_string(out.off_block_residual) + " after splitting");
  }
  return out;
}

MatrixConvexCombination Decomposition::combination() const {
  MatrixConvexCombination c;
  c.target_dim = gammas.empty() ? 0 : static_cast<int>(gammas.front().cols());
  for (size_t i = 0; i < summands.size(); ++i) c.terms.push_back({gammas[i], summands[i]});
  return c;
}

namespace {

Decomposition decompose_block(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol,
                              const DilationOptions& opts) {
  Decomposition d;
  const int n = x.n();
  MatrixTuple y = x;
  while (true) {
    const int dim = dilation_subspace(a, y, tol).dim;
    if (dim == 0) break;
    if (d.steps >= n * a.g()) throw Error(ErrorCode::kDescentFailure, "more than n*g dilation steps");
    DilationOptions o = opts;
    o.seed = opts.seed + 7919u * static_cast<std::uint64_t>(d.steps);
    auto c = maximal_one_dilation(a, y, tol, o);
    y = c.y_hat;
    d.dilation_trace.push_back(std::move(c));
    ++d.steps;
  }
  const auto bd = block_diagonalize(y, tol, opts.seed);
  CMatrix v = CMatrix::Zero(y.n(), n);
  v.topRows(n) = CMatrix::Identity(n, n);
  for (size_t i = 0; i < bd.blocks.size(); ++i) {
    const int s = bd.blocks[i].n();
    CMatrix gamma = bd.u.middleCols(bd.offsets[i], s).adjoint() * v;
    if (x.field() == Field::kReal) gamma = gamma.real().cast<Complex>();
    if (gamma.norm() < 1e-12) continue;
    d.summands.push_back(bd.blocks[i]);
    d.gammas.push_back(std::move(gamma));
  }
  return d;
}

}  // namespace

Decomposition decompose_to_free_extremes(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol,
                                         const DilationOptions& opts) {
  require_real(a, x);
  if (a.g() != x.g()) throw Error(ErrorCode::kDimensionMismatch, "pencil and point have different g");
  if (!is_bounded_level1(a, tol)) throw Error(ErrorCode::kUnboundedDomain, "D_A fails the level-1 boundedness gate");
  if (membership(a, x, tol).status == MembershipStatus::kOutside)
    throw Error(ErrorCode::kOutsideDomain, "X is outside D_A");

  Decomposition d;
  if (opts.presplit) {
    const auto bd = block_diagonalize(x, tol, opts.seed);
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
      const CMatrix w = bd.u.middleCols(bd.offsets[b], bd.blocks[b].n());
      auto part = decompose_block(a, bd.blocks[b], tol, opts);
      for (size_t i = 0; i < part.summands.size(); ++i) {
        d.summands.push_back(part.summands[i]);
        CMatrix gamma = part.gammas[i] * w.adjoint();
        if (x.field() == Field::kReal) gamma = gamma.real().cast<Complex>();
        d.gammas.push_back(std::move(gamma));
      }
      for (auto& c : part.dilation_trace) d.dilation_trace.push_back(std::move(c));
      d.steps += part.steps;
    }
  } else {
    d = decompose_block(a, x, tol, opts);
  }

  for (const auto& f : d.summands) {
    d.total_size += f.n();
    d.certified.push_back(free_extreme_test(a, f, tol));
  }
  MatrixTuple rec = MatrixTuple::zero(x.g(), x.n(), x.field());
  if (!d.summands.empty()) {
    MatrixConvexCombination c = d.combination();
    c.target_dim = x.n();
    rec = apply_combination(c, tol);
  }
  d.residual = distance(rec, x);
  return d;
}

}  // namespace freespec
