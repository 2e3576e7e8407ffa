#include "freespec/extreme.hpp"

namespace freespec {

namespace {

struct BoundaryData {
  Field field = Field::kReal;
  bool interior = false;
  CMatrix kernel;  // mn x k
};

BoundaryData boundary_data(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  BoundaryData d;
  d.field = join(a.field(), x.field());
  const CMatrix l = evaluate_L(a, x);
  if (l.rows() == 0) {
    d.interior = true;
    return d;
  }
  const auto eig = linalg::hermitian_eigen(l, d.field);
  const double lmin = eig.values(0);
  if (lmin < -tol.feas) throw Error(ErrorCode::kOutsideDomain, "lambda_min = " + std::to_string(lmin));
  if (lmin > tol.feas) {
    d.interior = true;
    d.kernel = CMatrix(l.rows(), 0);
    return d;
  }
  const double thr = tol.ker * std::max(1.0, eig.values(eig.values.size() - 1));
  int k = 0;
  while (k < eig.values.size() && std::abs(eig.values(k)) <= thr) ++k;
  d.kernel = eig.vectors.leftCols(k);
  return d;
}

DilationSubspace subspace_from(const LinearPencil& a, const MatrixTuple& x, const BoundaryData& d,
                               const Tolerances& tol) {
  DilationSubspace out;
  const int n = x.n();
  const int g = a.g();
  const int m = a.m();
  const int k = static_cast<int>(d.kernel.cols());
  out.kernel_dim = k;
  if (k == 0) {
    // No constraint: the standard basis spans everything.
    for (int j = 0; j < g; ++j) {
      for (int i = 0; i < n; ++i) {
        CMatrix b = CMatrix::Zero(n, g);
        b(i, j) = 1.0;
        out.basis.push_back(std::move(b));
      }
    }
    out.dim = n * g;
    return out;
  }
  // Lambda_A(beta*) K is linear in gamma = conj(beta); column (j, i) is
  // vec((A_j (x) e_i^T) K).
  CMatrix system(static_cast<Eigen::Index>(m) * k, static_cast<Eigen::Index>(n) * g);
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < n; ++i) {
      CMatrix row = CMatrix::Zero(1, n);
      row(0, i) = 1.0;
      const CMatrix c = linalg::kron(a[j], row) * d.kernel;
      system.col(static_cast<Eigen::Index>(j) * n + i) = Eigen::Map<const CVector>(c.data(), c.size());
    }
  }
  auto emit = [&](const auto& basis, int dim) {
    for (int c = 0; c < dim; ++c) {
      CMatrix b(n, g);
      for (int j = 0; j < g; ++j)
        for (int i = 0; i < n; ++i) b(i, j) = std::conj(Complex(basis(static_cast<Eigen::Index>(j) * n + i, c)));
      out.basis.push_back(std::move(b));
    }
  };
  if (d.field == Field::kReal) {
    const auto ns = linalg::null_space(RMatrix(system.real()), tol.ker, a.coefficients().norm());
    out.dim = ns.dim;
    out.smallest_kept = ns.smallest_kept;
    emit(ns.basis, ns.dim);
  } else {
    const auto ns = linalg::null_space(system, tol.ker, a.coefficients().norm());
    out.dim = ns.dim;
    out.smallest_kept = ns.smallest_kept;
    emit(ns.basis, ns.dim);
  }
  return out;
}

struct NullResult {
  int dim = 0;
  double smallest_kept = 0;
};

// Hermitian tuples (beta_0?, beta_1..beta_g) solving
// (I (x) beta_0 + sum_j A_j (x) beta_j) K = 0, with the trace row for the
// matrix-extreme variant.
NullResult hermitian_system(const LinearPencil& a, const MatrixTuple& x, const BoundaryData& d, bool with_trace,
                            const Tolerances& tol) {
  const int n = x.n();
  const int g = a.g();
  const int m = a.m();
  const auto basis = linalg::hermitian_basis(n, d.field);
  const int nb = static_cast<int>(basis.size());
  const int blocks = with_trace ? g + 1 : g;
  const int k = static_cast<int>(d.kernel.cols());
  const int per = (d.field == Field::kReal ? 1 : 2) * m * n * k;
  RMatrix system(per + (with_trace ? 1 : 0), blocks * nb);
  for (int blk = 0; blk < blocks; ++blk) {
    const int j = with_trace ? blk - 1 : blk;
    const CMatrix coeff = j < 0 ? CMatrix(CMatrix::Identity(m, m)) : a[j];
    for (int b = 0; b < nb; ++b) {
      const int col = blk * nb + b;
      const CMatrix img = linalg::kron(coeff, basis[static_cast<size_t>(b)]) * d.kernel;
      system.block(0, col, per, 1) = linalg::flatten_real(img, d.field);
      if (with_trace) {
        const Complex tr = j < 0 ? basis[static_cast<size_t>(b)].trace()
                                 : (x[j] * basis[static_cast<size_t>(b)]).trace();
        system(per, col) = tr.real();
      }
    }
  }
  const auto ns = linalg::null_space(system, tol.ker, a.coefficients().norm());
  return {ns.dim, ns.smallest_kept};
}

}  // namespace

DilationSubspace dilation_subspace(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  return subspace_from(a, x, boundary_data(a, x, tol), tol);
}

bool free_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  const auto d = boundary_data(a, x, tol);
  if (d.interior || x.n() == 0) return false;
  if (subspace_from(a, x, d, tol).dim != 0) return false;
  return irreducible(x.with_field(d.field), tol).irreducible;
}

bool classical_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  const auto d = boundary_data(a, x, tol);
  if (d.interior || x.n() == 0 || d.kernel.cols() == 0) return false;
  return hermitian_system(a, x, d, false, tol).dim == 0;
}

bool matrix_extreme_test(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  const auto d = boundary_data(a, x, tol);
  if (d.interior || x.n() == 0 || d.kernel.cols() == 0) return false;
  return hermitian_system(a, x, d, true, tol).dim == 0;
}

ExtremeReport classify(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol,
                       const ClassifyOptions& opts) {
  ExtremeReport r;
  const auto d = boundary_data(a, x, tol);
  const auto comm = self_adjoint_commutant(x.with_field(d.field), tol);
  r.irreducible = x.n() > 0 && comm.dim == 1;
  r.commutant_dim = comm.dim;
  r.residuals.commutant = comm.smallest_kept;
  if (d.interior || x.n() == 0) {
    r.interior = true;
    r.dilation_dim = x.n() * a.g();
    return r;
  }
  r.kernel_dim = static_cast<int>(d.kernel.cols());
  const auto sub = subspace_from(a, x, d, tol);
  r.dilation_dim = sub.dim;
  r.residuals.free = sub.smallest_kept;
  if (r.kernel_dim > 0) {
    const auto cl = hermitian_system(a, x, d, false, tol);
    const auto mx = hermitian_system(a, x, d, true, tol);
    r.classical_null_dim = cl.dim;
    r.matrix_null_dim = mx.dim;
    r.residuals.classical = cl.smallest_kept;
    r.residuals.matrix = mx.smallest_kept;
    r.classical = cl.dim == 0;
    r.matrix = mx.dim == 0;
  }
  r.free = r.irreducible && sub.dim == 0;
  if (opts.assert_hierarchy) {
    if ((r.free && !r.matrix) || (r.matrix && !r.classical)) {
      throw Error(ErrorCode::kHierarchyViolation,
                  std::string("free=") + (r.free ? "1" : "0") + " matrix=" + (r.matrix ? "1" : "0") +
                      " classical=" + (r.classical ? "1" : "0"));
    }
    const bool level1 = x.n() == 1 && (d.field == Field::kReal || opts.conjugation_closed);
    if (level1 && r.classical != r.free)
      throw Error(ErrorCode::kHierarchyViolation, "level-1 point with classical != free");
  }
  return r;
}

}  // namespace freespec
