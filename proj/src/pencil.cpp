#include "freespec/pencil.hpp"

#include <Eigen/QR>

#include <cmath>

namespace freespec {

LinearPencil::LinearPencil(MatrixTuple coefficients) : a_(std::move(coefficients)) {
  if (a_.n() < 1) throw Error(ErrorCode::kInvalidTuple, "pencil coefficients must have m >= 1");
}

const char* to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::kInterior: return "Interior";
    case MembershipStatus::kBoundary: return "Boundary";
    case MembershipStatus::kOutside: return "Outside";
  }
  return "?";
}

CMatrix evaluate_lambda(const LinearPencil& a, const MatrixTuple& x) {
  if (a.g() != x.g())
    throw Error(ErrorCode::kDimensionMismatch,
                "pencil has g=" + std::to_string(a.g()) + " but point has g=" + std::to_string(x.g()));
  const int d = a.m() * x.n();
  CMatrix out = CMatrix::Zero(d, d);
  for (int j = 0; j < a.g(); ++j) out += linalg::kron(a[j], x[j]);
  return out;
}

CMatrix evaluate_L(const LinearPencil& a, const MatrixTuple& x) {
  CMatrix lam = evaluate_lambda(a, x);
  return CMatrix::Identity(lam.rows(), lam.cols()) - lam;
}

CMatrix evaluate_lambda_columns(const LinearPencil& a, const CMatrix& beta) {
  if (beta.cols() != a.g()) throw Error(ErrorCode::kDimensionMismatch, "column tuple must have g columns");
  const int n = static_cast<int>(beta.rows());
  CMatrix out = CMatrix::Zero(a.m() * n, a.m());
  for (int j = 0; j < a.g(); ++j) out += linalg::kron(a[j], beta.col(j));
  return out;
}

CMatrix kernel_basis(const CMatrix& m, Field field, const Tolerances& tol) {
  if (m.rows() == 0) return CMatrix(0, 0);
  const auto eig = linalg::hermitian_eigen(m, field);
  if (eig.values(0) < -tol.feas) {
    throw Error(ErrorCode::kNotPsd, "lambda_min = " + std::to_string(eig.values(0)));
  }
  const double thr = tol.ker * std::max(1.0, eig.values(eig.values.size() - 1));
  int count = 0;
  while (count < eig.values.size() && std::abs(eig.values(count)) <= thr) ++count;
  return eig.vectors.leftCols(count);
}

MembershipVerdict membership(const LinearPencil& a, const MatrixTuple& x, const Tolerances& tol) {
  const CMatrix l = evaluate_L(a, x);
  const Field f = join(a.field(), x.field());
  MembershipVerdict v;
  if (l.rows() == 0) {
    v.min_eigenvalue = std::numeric_limits<double>::infinity();
    return v;
  }
  v.min_eigenvalue = linalg::min_eigenvalue(l, f);
  if (v.min_eigenvalue > tol.feas) {
    v.status = MembershipStatus::kInterior;
  } else if (v.min_eigenvalue >= -tol.feas) {
    v.status = MembershipStatus::kBoundary;
    v.kernel_dim = static_cast<int>(kernel_basis(l, f, tol).cols());
  } else {
    v.status = MembershipStatus::kOutside;
  }
  return v;
}

bool is_bounded_level1(const LinearPencil& a, const Tolerances& tol) {
  const int g = a.g();
  for (int i = 0; i < g; ++i) {
    for (double s : {1.0, -1.0}) {
      AffinePencil p;
      p.field = a.field();
      p.constant = -s * a[i];
      for (int k = 0; k < g; ++k)
        if (k != i) p.directions.push_back(-a[k]);
      const auto st = feasibility_margin(p);
      if (st.unbounded || st.margin >= -tol.feas) return false;
    }
  }
  return true;
}

MconvResult mconv_membership_report(const MatrixTuple& a, const MatrixTuple& y, const Tolerances& tol) {
  if (a.g() != y.g()) throw Error(ErrorCode::kDimensionMismatch, "mconv membership needs equal g");
  const int m = a.n();
  const int n = y.n();
  const int g = a.g();
  const Field f = join(a.field(), y.field());
  MconvResult res;
  const auto basis = linalg::hermitian_basis(m * n, f);
  const int per = (f == Field::kReal ? 1 : 2) * n * n;

  // Constraint map C -> (sum_k C_kk, sum_kl (A_j)_kl C_kl for each j).
  auto constraints = [&](const CMatrix& c) {
    RVector out(per * (g + 1));
    CMatrix unital = CMatrix::Zero(n, n);
    for (int k = 0; k < m; ++k) unital += c.block(k * n, k * n, n, n);
    out.segment(0, per) = linalg::flatten_real(unital, f);
    for (int j = 0; j < g; ++j) {
      CMatrix img = CMatrix::Zero(n, n);
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) img += a[j](k, l) * c.block(k * n, l * n, n, n);
      out.segment((j + 1) * per, per) = linalg::flatten_real(img, f);
    }
    return out;
  };

  RMatrix system(per * (g + 1), static_cast<Eigen::Index>(basis.size()));
  for (size_t p = 0; p < basis.size(); ++p) system.col(static_cast<Eigen::Index>(p)) = constraints(basis[p]);
  RVector rhs(per * (g + 1));
  rhs.segment(0, per) = linalg::flatten_real(CMatrix::Identity(n, n), f);
  for (int j = 0; j < g; ++j) rhs.segment((j + 1) * per, per) = linalg::flatten_real(y[j], f);

  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(system);
  const RVector c0 = cod.solve(rhs);
  const double resid = (system * c0 - rhs).norm();
  res.consistent = resid <= 1e-9 * (1.0 + rhs.norm());
  if (!res.consistent) {
    res.margin = -resid;
    return res;
  }
  const auto ns = linalg::null_space(system, 1e-12);
  AffinePencil p;
  p.field = f;
  p.constant = CMatrix::Zero(m * n, m * n);
  for (size_t q = 0; q < basis.size(); ++q) p.constant += c0(static_cast<Eigen::Index>(q)) * basis[q];
  for (int c = 0; c < ns.dim; ++c) {
    CMatrix dir = CMatrix::Zero(m * n, m * n);
    for (size_t q = 0; q < basis.size(); ++q) dir += ns.basis(static_cast<Eigen::Index>(q), c) * basis[q];
    p.directions.push_back(std::move(dir));
  }
  res.free_parameters = ns.dim;
  const auto st = feasibility_margin(p);
  res.margin = st.margin;
  res.choi = p.at(st.witness);
  res.member = st.margin >= -tol.feas;
  return res;
}

bool mconv_membership(const MatrixTuple& a, const MatrixTuple& y, const Tolerances& tol) {
  return mconv_membership_report(a, y, tol).member;
}

double boundary_scale(const LinearPencil& a, const MatrixTuple& direction) {
  const double lam = linalg::max_eigenvalue(evaluate_lambda(a, direction), join(a.field(), direction.field()));
  if (!(lam > 1e-12)) throw Error(ErrorCode::kUnboundedDomain, "ray never leaves the spectrahedron");
  return 1.0 / lam;
}

MatrixTuple sample_point(const LinearPencil& a, int n, Field field, SampleKind kind, linalg::Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<CMatrix> dir;
    for (int j = 0; j < a.g(); ++j) dir.push_back(linalg::random_hermitian(n, field, rng));
    MatrixTuple d(a.g(), n, std::move(dir), field);
    double s = 0;
    try {
      s = boundary_scale(a, d);
    } catch (const Error&) {
      continue;
    }
    if (kind == SampleKind::kInterior) s *= unif(rng);
    return d.scaled(s);
  }
  throw Error(ErrorCode::kUnboundedDomain, "could not find a bounded sampling direction");
}

LinearPencil random_bounded_pencil(int m, int g, Field field, linalg::Rng& rng, int max_draws) {
  for (int draw = 0; draw < max_draws; ++draw) {
    std::vector<CMatrix> coeffs;
    for (int j = 0; j < g; ++j) coeffs.push_back(linalg::random_hermitian(m, field, rng));
    LinearPencil a(MatrixTuple(g, m, std::move(coeffs), field));
    if (is_bounded_level1(a)) return a;
  }
  throw Error(ErrorCode::kUnboundedDomain, "no bounded pencil with m=" + std::to_string(m) + ", g=" +
                                               std::to_string(g) + " in " + std::to_string(max_draws) + " draws");
}

bool polar_dual_check(const LinearPencil& a, const MatrixTuple& y, int samples, std::uint64_t seed,
                      const Tolerances& tol) {
  if (!is_bounded_level1(a, tol)) throw Error(ErrorCode::kUnboundedDomain, "polar dual check needs a bounded D_A");
  if (y.g() != a.g()) throw Error(ErrorCode::kDimensionMismatch, "polar dual check needs equal g");
  linalg::Rng rng(seed);
  const int level = std::max(1, y.n());
  for (int s = 0; s < samples; ++s) {
    const auto kind = (s % 2 == 0) ? SampleKind::kBoundary : SampleKind::kInterior;
    const MatrixTuple x = sample_point(a, level, a.field(), kind, rng);
    // L_X(Y) = I - sum_j X_j (x) Y_j
    const LinearPencil lx(x);
    if (linalg::min_eigenvalue(evaluate_L(lx, y), join(x.field(), y.field())) < -tol.feas) return false;
  }
  return true;
}

}  // namespace freespec
