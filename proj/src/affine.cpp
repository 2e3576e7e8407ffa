#include "freespec/affine.hpp"

#include "freespec/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <ostream>

namespace freespec {

CMatrix AffinePencil::at(const RVector& y) const {
  CMatrix m = constant;
  for (int j = 0; j < num_vars(); ++j) m += y(j) * directions[static_cast<size_t>(j)];
  return m;
}

CMatrix AffinePencil::linear_part(const RVector& d) const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  for (int j = 0; j < num_vars(); ++j) m += d(j) * directions[static_cast<size_t>(j)];
  return m;
}

void AffinePencil::validate(double sym_tol) const {
  auto check = [&](const CMatrix& m) {
    if (m.rows() != dim() || m.cols() != dim())
      throw Error(ErrorCode::kDimensionMismatch, "affine pencil matrices differ in size");
    if (linalg::hermitian_deviation(m) > sym_tol * (1.0 + m.norm()))
      throw Error(ErrorCode::kInvalidTuple, "affine pencil matrix is not hermitian");
  };
  check(constant);
  for (const auto& m : directions) check(m);
}

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Mat<Scalar> cast_to(const CMatrix& m) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return m.real();
  } else {
    return m;
  }
}

// Barrier method on: maximize t subject to S(y, t) = M(y) - t I > 0.
template <typename Scalar>
SolveStatus barrier_margin(const AffinePencil& p, const MarginOptions& opts, const RVector& y0) {
  using M = Mat<Scalar>;
  const int d = p.dim();
  const int k = p.num_vars();
  const M m0 = cast_to<Scalar>(p.constant);
  std::vector<M> dirs;
  dirs.reserve(static_cast<size_t>(k));
  for (const auto& dm : p.directions) dirs.push_back(cast_to<Scalar>(dm));

  auto slack = [&](const RVector& y, double t) {
    M s = m0;
    for (int j = 0; j < k; ++j) s += y(j) * dirs[static_cast<size_t>(j)];
    s.diagonal().array() -= t;
    return s;
  };

  SolveStatus st;
  RVector y = y0;
  double t = linalg::min_eigenvalue(p.at(y), p.field) - 1.0;
  double tau = 1.0;
  const int nz = k + 1;

  auto objective = [&](const RVector& yy, double tt, bool* ok) {
    Eigen::LLT<M> llt(slack(yy, tt));
    if (llt.info() != Eigen::Success) {
      *ok = false;
      return 0.0;
    }
    const auto& l = llt.matrixL();
    double logdet = 0;
    for (int i = 0; i < d; ++i) {
      const double v = std::real(l(i, i));
      if (!(v > 0)) {
        *ok = false;
        return 0.0;
      }
      logdet += 2.0 * std::log(v);
    }
    *ok = true;
    return -tau * tt - logdet;
  };

  int iters = 0;
  bool capped = false;
  while (true) {
    // Newton's method for the current tau.
    for (int inner = 0; inner < 200; ++inner) {
      if (iters >= opts.max_iterations) {
        capped = true;
        break;
      }
      ++iters;
      Eigen::LLT<M> llt(slack(y, t));
      if (llt.info() != Eigen::Success) break;  // lost strict feasibility; keep last iterate
      const M w = llt.solve(M::Identity(d, d));
      std::vector<M> g(static_cast<size_t>(nz));
      for (int j = 0; j < k; ++j) g[static_cast<size_t>(j)] = w * dirs[static_cast<size_t>(j)];
      g[static_cast<size_t>(k)] = -w;
      RVector grad(nz);
      RMatrix hess(nz, nz);
      for (int a = 0; a < nz; ++a) {
        grad(a) = -std::real(g[static_cast<size_t>(a)].trace());
        for (int b = a; b < nz; ++b) {
          const double h = std::real((g[static_cast<size_t>(a)].array() *
                                      g[static_cast<size_t>(b)].transpose().array()).sum());
          hess(a, b) = h;
          hess(b, a) = h;
        }
      }
      grad(k) -= tau;
      const double ridge = 1e-14 * (hess.trace() / nz + 1.0);
      hess.diagonal().array() += ridge;
      const RVector step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!std::isfinite(decrement) || decrement < 2e-10) break;
      bool ok = false;
      const double f0 = objective(y, t, &ok);
      double s = 1.0;
      bool moved = false;
      while (s > 1e-14) {
        const RVector yn = y + s * step.head(k);
        const double tn = t + s * step(k);
        const double f1 = objective(yn, tn, &ok);
        if (ok && f1 <= f0 - 0.25 * s * decrement) {
          y = yn;
          t = tn;
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (opts.trace) {
        *opts.trace << "{\"iter\":" << iters << ",\"tau\":" << tau << ",\"t\":" << t
                    << ",\"decrement\":" << decrement << "}\n";
      }
      if (!moved) break;
      if (t > opts.unbounded_cap) break;
    }
    if (capped || t > opts.unbounded_cap) break;
    if (d / tau < opts.gap_tol) break;
    tau *= 8.0;
  }
  st.iterations = iters;
  st.witness = y;
  st.margin = linalg::min_eigenvalue(p.at(y), p.field);
  st.unbounded = t > opts.unbounded_cap;
  st.converged = !capped;
  return st;
}

SolveStatus supergradient_margin(const AffinePencil& p, const MarginOptions& opts, const RVector& y0) {
  const int k = p.num_vars();
  SolveStatus st;
  RVector y = y0;
  RVector best = y;
  double best_margin = -std::numeric_limits<double>::infinity();
  double scale = 0;
  for (const auto& m : p.directions) scale = std::max(scale, m.norm());
  const double eta0 = scale > 0 ? 1.0 / scale : 1.0;
  int since_improvement = 0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    auto eig = linalg::hermitian_eigen(p.at(y), p.field);
    const double lam = eig.values(0);
    if (lam > best_margin + opts.stall_tol) {
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (lam > best_margin) {
      best_margin = lam;
      best = y;
    }
    if (opts.trace) *opts.trace << "{\"iter\":" << it << ",\"margin\":" << lam << "}\n";
    if (since_improvement > 200 || best_margin > opts.unbounded_cap) break;
    const CVector v = eig.vectors.col(0);
    RVector sg(k);
    for (int j = 0; j < k; ++j) sg(j) = std::real(v.dot(p.directions[static_cast<size_t>(j)] * v));
    const double nrm = sg.norm();
    if (nrm == 0) break;
    y += (eta0 / std::sqrt(1.0 + it)) * sg / nrm;
  }
  st.iterations = it;
  st.witness = best;
  st.margin = best_margin;
  st.unbounded = best_margin > opts.unbounded_cap;
  st.converged = it < opts.max_iterations;
  return st;
}

}  // namespace

SolveStatus feasibility_margin(const AffinePencil& p, const MarginOptions& opts, const RVector* start) {
  const RVector y0 = start ? *start : RVector::Zero(p.num_vars());
  if (y0.size() != p.num_vars())
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong length");
  if (p.dim() == 0) {
    SolveStatus st;
    st.converged = true;
    st.unbounded = true;
    st.margin = std::numeric_limits<double>::infinity();
    st.witness = y0;
    return st;
  }
  if (p.num_vars() == 0) {
    SolveStatus st;
    st.converged = true;
    st.witness = y0;
    st.margin = linalg::min_eigenvalue(p.constant, p.field);
    return st;
  }
  if (opts.method == MarginMethod::kSupergradient) return supergradient_margin(p, opts, y0);
  if (p.field == Field::kReal) return barrier_margin<double>(p, opts, y0);
  return barrier_margin<Complex>(p, opts, y0);
}

double max_step(const AffinePencil& p, const RVector& y0, const RVector& d, const Tolerances& tol) {
  const CMatrix m0 = p.at(y0);
  const CMatrix dm = p.linear_part(d);
  const auto eig = linalg::hermitian_eigen(m0, p.field);
  if (eig.values(0) < -tol.feas)
    throw Error(ErrorCode::kInfeasibleStart, "max_step from an infeasible point");
  const double dnorm = dm.norm();
  if (dnorm <= 1e-14 * (1.0 + m0.norm()))
    throw Error(ErrorCode::kUnboundedDirection, "direction does not move the pencil");
  const double thr = tol.ker * std::max(1.0, eig.values(eig.values.size() - 1));
  std::vector<int> ker;
  std::vector<int> rng;
  for (int i = 0; i < eig.values.size(); ++i) (eig.values(i) <= thr ? ker : rng).push_back(i);

  auto columns = [&](const std::vector<int>& idx) {
    CMatrix out(m0.rows(), static_cast<Eigen::Index>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(idx[c]);
    return out;
  };

  bool closed_form = true;
  if (!ker.empty()) {
    const CMatrix k = columns(ker);
    const CMatrix dk = k.adjoint() * dm * k;
    if (linalg::min_eigenvalue(dk, p.field) < -tol.ker * dnorm) return 0.0;
    if ((dm * k).norm() > 1e-9 * dnorm) closed_form = false;
  }

  if (closed_form) {
    if (rng.empty()) throw Error(ErrorCode::kUnboundedDirection, "pencil vanishes identically");
    const CMatrix r = columns(rng);
    CMatrix g = r.adjoint() * dm * r;
    for (size_t a = 0; a < rng.size(); ++a) {
      for (size_t b = 0; b < rng.size(); ++b) {
        g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) /=
            -std::sqrt(eig.values(rng[a]) * eig.values(rng[b]));
      }
    }
    const double mu = linalg::max_eigenvalue(linalg::symmetrize(g), p.field);
    if (mu <= 0 || 1.0 / mu > std::ldexp(1.0, 30))
      throw Error(ErrorCode::kUnboundedDirection, "no boundary along direction");
    return 1.0 / mu;
  }

  auto f = [&](double t) { return linalg::min_eigenvalue(p.at(y0 + t * d), p.field); };
  const double floor = std::min(0.0, eig.values(0));
  double lo = 0;
  double hi = 1;
  while (f(hi) >= floor) {
    lo = hi;
    hi *= 2;
    if (hi > std::ldexp(1.0, 30)) throw Error(ErrorCode::kUnboundedDirection, "no boundary along direction");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= floor ? lo : hi) = mid;
  }
  return lo;
}

namespace {

struct SigmaSystem {
  linalg::NullSpace<RMatrix> ns;
  int kernel_dim = 0;
};

SigmaSystem sigma_system(const AffinePencil& p, const RVector& y, const Tolerances& tol) {
  const auto eig = linalg::hermitian_eigen(p.at(y), p.field);
  const double thr = tol.ker * std::max(1.0, eig.values(eig.values.size() - 1));
  std::vector<int> ker;
  for (int i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) <= thr) ker.push_back(i);
  CMatrix k(p.dim(), static_cast<Eigen::Index>(ker.size()));
  for (size_t c = 0; c < ker.size(); ++c) k.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(ker[c]);
  const int per = (p.field == Field::kReal ? 1 : 2) * p.dim() * static_cast<int>(ker.size());
  RMatrix system(per, p.num_vars());
  double scale = 0;
  for (int j = 0; j < p.num_vars(); ++j) {
    system.col(j) = linalg::flatten_real(p.directions[static_cast<size_t>(j)] * k, p.field);
    scale = std::max(scale, p.directions[static_cast<size_t>(j)].norm());
  }
  return {linalg::null_space(system, tol.ker, scale), static_cast<int>(ker.size())};
}

}  // namespace

int face_dimension(const AffinePencil& p, const RVector& y, const Tolerances& tol) {
  return sigma_system(p, y, tol).ns.dim;
}

ExtremePointResult extreme_point_of_spectrahedron(const AffinePencil& p, const RVector& start,
                                                  const Tolerances& tol) {
  if (start.size() != p.num_vars()) throw Error(ErrorCode::kDimensionMismatch, "start has wrong length");
  if (linalg::min_eigenvalue(p.at(start), p.field) < -tol.feas)
    throw Error(ErrorCode::kInfeasibleStart, "extreme point descent from an infeasible start");
  ExtremePointResult res;
  RVector y = start;
  const int cap = 4 * (p.dim() + p.num_vars()) + 10;
  for (int step = 0; step <= cap; ++step) {
    const auto sys = sigma_system(p, y, tol);
    if (sys.ns.dim == 0) {
      res.point = y;
      res.steps = step;
      res.kernel_dim = sys.kernel_dim;
      res.sigma_residual = sys.ns.smallest_kept;
      return res;
    }
    // Candidate directions: each null-space basis vector in order, then
    // deterministic rotations mixing consecutive pairs.
    std::vector<RVector> candidates;
    for (int c = 0; c < sys.ns.dim; ++c) candidates.push_back(sys.ns.basis.col(c));
    for (int c = 0; c + 1 < sys.ns.dim; ++c)
      candidates.push_back((sys.ns.basis.col(c) + sys.ns.basis.col(c + 1)).normalized());
    bool moved = false;
    for (const auto& sigma : candidates) {
      for (double sign : {1.0, -1.0}) {
        double t = 0;
        try {
          t = max_step(p, y, sign * sigma, tol);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kUnboundedDirection) throw;
          throw Error(ErrorCode::kUnboundedDirection, "spectrahedron is not compact along a face direction");
        }
        if (t > 1e-12) {
          y += t * sign * sigma;
          moved = true;
          break;
        }
      }
      if (moved) break;
    }
    if (!moved) {
      throw Error(ErrorCode::kIterationCapExceeded,
                  "no admissible face direction moves the point; face dimension " +
                      std::to_string(sys.ns.dim));
    }
  }
  throw Error(ErrorCode::kIterationCapExceeded, "extreme point descent did not terminate");
}

}  // namespace freespec
