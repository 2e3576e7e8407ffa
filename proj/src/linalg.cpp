#include "freespec/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace freespec {

const char* to_string(Field f) { return f == Field::kReal ? "real" : "complex"; }

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::kReal;
  if (s == "complex") return Field::kComplex;
  throw Error(ErrorCode::kInvalidTuple, "unknown field '" + s + "'");
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidTuple: return "InvalidTuple";
    case ErrorCode::kIllFormedCombination: return "IllFormedCombination";
    case ErrorCode::kBadNormalization: return "BadNormalization";
    case ErrorCode::kNotPsd: return "NotPSD";
    case ErrorCode::kUnboundedDomain: return "UnboundedDomain";
    case ErrorCode::kOutsideDomain: return "OutsideDomain";
    case ErrorCode::kHierarchyViolation: return "HierarchyViolation";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kUnboundedDirection: return "UnboundedDirection";
    case ErrorCode::kInfeasibleStart: return "InfeasibleStart";
    case ErrorCode::kInfeasibleBeta: return "InfeasibleBeta";
    case ErrorCode::kUnboundedAlpha: return "UnboundedAlpha";
    case ErrorCode::kAlreadyMaximal: return "AlreadyMaximal";
    case ErrorCode::kFieldUnsupported: return "FieldUnsupported";
    case ErrorCode::kDescentFailure: return "DescentFailure";
    case ErrorCode::kBlockingFailure: return "BlockingFailure";
    case ErrorCode::kNotStrictContraction: return "NotStrictContraction";
    case ErrorCode::kSingularT: return "SingularT";
    case ErrorCode::kOutsideCube: return "OutsideCube";
    case ErrorCode::kLevelTooLarge: return "LevelTooLarge";
    case ErrorCode::kUnknownName: return "UnknownName";
  }
  return "Unknown";
}

namespace linalg {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermitianEigen hermitian_eigen(const CMatrix& m, Field field) {
  HermitianEigen out;
  if (m.rows() == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  if (field == Field::kReal) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m.real());
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

double min_eigenvalue(const CMatrix& m, Field field) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  if (field == Field::kReal) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const CMatrix& m, Field field) {
  if (m.rows() == 0) return -std::numeric_limits<double>::infinity();
  if (field == Field::kReal) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(m.rows() - 1);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(m.rows() - 1);
}

CMatrix symmetrize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

double hermitian_deviation(const CMatrix& m) { return (m - m.adjoint()).norm(); }

CMatrix psd_sqrt(const CMatrix& m, Field field) {
  auto eig = hermitian_eigen(m, field);
  RVector s = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * s.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

CMatrix hermitian_pinv(const CMatrix& m, Field field, double cutoff) {
  auto eig = hermitian_eigen(m, field);
  CVector inv(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    inv(i) = std::abs(eig.values(i)) <= cutoff ? 0.0 : 1.0 / eig.values(i);
  }
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

namespace {

template <typename MatT>
NullSpace<MatT> null_space_impl(const MatT& system, double rel_tol, double scale) {
  NullSpace<MatT> out;
  const Eigen::Index cols = system.cols();
  if (cols == 0) {
    out.basis.resize(0, 0);
    return out;
  }
  if (system.rows() == 0) {
    out.basis = MatT::Identity(cols, cols);
    out.dim = static_cast<int>(cols);
    return out;
  }
  Eigen::BDCSVD<MatT> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = rel_tol * std::max(smax, scale);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 0 && sv(i) > cutoff) {
      ++rank;
      out.smallest_kept = sv(i);
    } else {
      out.largest_dropped = std::max(out.largest_dropped, static_cast<double>(sv(i)));
    }
  }
  out.sigma_min = (sv.size() < cols) ? 0.0 : static_cast<double>(sv(sv.size() - 1));
  out.dim = static_cast<int>(cols - rank);
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

}  // namespace

NullSpace<RMatrix> null_space(const RMatrix& system, double rel_tol, double scale) {
  return null_space_impl(system, rel_tol, scale);
}

NullSpace<CMatrix> null_space(const CMatrix& system, double rel_tol, double scale) {
  return null_space_impl(system, rel_tol, scale);
}

RVector flatten_real(const CMatrix& m, Field field) {
  const Eigen::Index sz = m.size();
  RVector out(field == Field::kReal ? sz : 2 * sz);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(k++) = m(i, j).real();
  if (field == Field::kComplex) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) out(k++) = m(i, j).imag();
  }
  return out;
}

std::vector<CMatrix> hermitian_basis(int n, Field field) {
  std::vector<CMatrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = r;
      e(j, i) = r;
      basis.push_back(std::move(e));
      if (field == Field::kComplex) {
        CMatrix f = CMatrix::Zero(n, n);
        f(i, j) = Complex(0, r);
        f(j, i) = Complex(0, -r);
        basis.push_back(std::move(f));
      }
    }
  }
  return basis;
}

int numerical_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

CMatrix random_gaussian(int rows, int cols, Field field, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix out(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = field == Field::kComplex ? nd(rng) : 0.0;
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

CMatrix random_hermitian(int n, Field field, Rng& rng) {
  return symmetrize(random_gaussian(n, n, field, rng));
}

CMatrix random_isometry(int rows, int cols, Field field, Rng& rng) {
  CMatrix g = random_gaussian(rows, cols, field, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  // Fix the phase ambiguity so the distribution does not depend on QR signs.
  CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  if (field == Field::kReal) q = q.real().cast<Complex>();
  return q;
}

CMatrix random_unitary(int n, Field field, Rng& rng) { return random_isometry(n, n, field, rng); }

}  // namespace linalg
}  // namespace freespec
