#include "freespec/solver.hpp"

#include <cmath>

namespace freespec {

namespace {

Field beta_field(const CMatrix& beta) {
  return (beta.size() > 0 && beta.imag().cwiseAbs().maxCoeff() > 0.0) ? Field::kComplex : Field::kReal;
}

}  // namespace

GammaPencil::GammaPencil(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta, const Tolerances& tol)
    : a_(a), field_(join(join(a.field(), x.field()), beta_field(beta))) {
  if (beta.rows() != x.n() || beta.cols() != a.g())
    throw Error(ErrorCode::kDimensionMismatch, "beta must be an n x g column tuple");
  if (beta.norm() == 0.0) throw Error(ErrorCode::kInfeasibleBeta, "beta is zero");
  const CMatrix l = evaluate_L(a, x);
  const auto eig = linalg::hermitian_eigen(l, field_);
  if (eig.values(0) < -tol.feas) throw Error(ErrorCode::kOutsideDomain, "X is outside D_A");
  const double cutoff = tol.ker * std::max(1.0, eig.values(eig.values.size() - 1));
  const CMatrix lam = evaluate_lambda_columns(a, beta);
  for (int i = 0; i < eig.values.size(); ++i)
    if (std::abs(eig.values(i)) <= cutoff) range_defect_ += (eig.vectors.col(i).adjoint() * lam).squaredNorm();
  range_defect_ = std::sqrt(range_defect_);
  if (range_defect_ > 1e-6 * (1.0 + lam.norm())) {
    throw Error(ErrorCode::kInfeasibleBeta,
                "beta is not in the dilation subspace (defect " + std::to_string(range_defect_) + ")");
  }
  q_ = linalg::symmetrize(lam.adjoint() * linalg::hermitian_pinv(l, field_, cutoff) * lam);
  if (field_ == Field::kReal) q_ = q_.real().cast<Complex>();
}

AffinePencil GammaPencil::at_alpha(double alpha) const {
  AffinePencil p;
  p.field = field_;
  p.constant = CMatrix::Identity(a_.m(), a_.m()) - alpha * alpha * q_;
  for (int j = 0; j < a_.g(); ++j) p.directions.push_back(-a_[j]);
  return p;
}

MatrixTuple one_dilation(const MatrixTuple& x, const CMatrix& beta, const RVector& psi) {
  const int n = x.n();
  if (beta.rows() != n || beta.cols() != x.g() || psi.size() != x.g())
    throw Error(ErrorCode::kDimensionMismatch, "one_dilation shapes do not match");
  std::vector<CMatrix> out;
  for (int j = 0; j < x.g(); ++j) {
    CMatrix y(n + 1, n + 1);
    y.topLeftCorner(n, n) = x[j];
    y.topRightCorner(n, 1) = beta.col(j);
    y.bottomLeftCorner(1, n) = beta.col(j).adjoint();
    y(n, n) = psi(j);
    out.push_back(std::move(y));
  }
  return MatrixTuple(x.g(), n + 1, std::move(out), join(x.field(), beta_field(beta)));
}

AffinePencil dilation_pencil(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta) {
  const MatrixTuple base = one_dilation(x, beta, RVector::Zero(a.g()));
  AffinePencil p;
  p.field = join(a.field(), base.field());
  p.constant = evaluate_L(a, base);
  CMatrix corner = CMatrix::Zero(x.n() + 1, x.n() + 1);
  corner(x.n(), x.n()) = 1.0;
  for (int j = 0; j < a.g(); ++j) p.directions.push_back(-linalg::kron(a[j], corner));
  return p;
}

AlphaResult maximize_alpha(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta, const Tolerances& tol) {
  const GammaPencil gamma(a, x, beta, tol);
  AlphaResult res;
  RVector warm = RVector::Zero(a.g());
  auto feasible = [&](double alpha, SolveStatus& st) {
    st = feasibility_margin(gamma.at_alpha(alpha), {}, &warm);
    return st.margin >= 0.0;
  };

  SolveStatus st;
  if (!feasible(0.0, st)) throw Error(ErrorCode::kOutsideDomain, "Gamma set is empty at alpha = 0");
  double lo = 0;
  double hi = 1;
  res.psi = st.witness;
  res.margin = st.margin;
  while (feasible(hi, st)) {
    lo = hi;
    res.psi = warm = st.witness;
    res.margin = st.margin;
    hi *= 2;
    if (hi > std::ldexp(1.0, 30)) throw Error(ErrorCode::kUnboundedAlpha, "alpha exceeds 2^30");
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid, st)) {
      lo = mid;
      res.psi = warm = st.witness;
      res.margin = st.margin;
    } else {
      hi = mid;
    }
    ++res.bisections;
  }
  res.alpha = lo;
  return res;
}

}  // namespace freespec
