#include "freespec/examples.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace freespec::examples {

namespace {

CMatrix sym_unit(int m, int a, int b) {
  CMatrix e = CMatrix::Zero(m, m);
  e(a, b) += 1.0;
  e(b, a) += 1.0;
  return e;
}

int parse_int(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorCode::kUnknownName, "bad integer in set name '" + whole + "'");
  return std::stoi(s);
}

}  // namespace

NamedSpectrahedron free_cube(int g) {
  if (g < 1) throw Error(ErrorCode::kInvalidTuple, "free cube needs g >= 1");
  const int m = 2 * g;
  std::vector<CMatrix> a;
  for (int j = 0; j < g; ++j) {
    CMatrix c = CMatrix::Zero(m, m);
    c(2 * j, 2 * j) = 1.0;
    c(2 * j + 1, 2 * j + 1) = -1.0;
    a.push_back(std::move(c));
  }
  return {"cube:" + std::to_string(g), LinearPencil(MatrixTuple(g, m, std::move(a), Field::kReal)), 0, g,
          "X_1..X_g"};
}

NamedSpectrahedron matrix_ball(int g) {
  if (g < 1) throw Error(ErrorCode::kInvalidTuple, "matrix ball needs g >= 1");
  const int m = g + 1;
  std::vector<CMatrix> a;
  for (int j = 0; j < g; ++j) a.push_back(-sym_unit(m, 0, j + 1));
  return {"ball:" + std::to_string(g), LinearPencil(MatrixTuple(g, m, std::move(a), Field::kReal)), 0, g,
          "X_1..X_g"};
}

NamedSpectrahedron mdg_pencil(int d, int g) {
  if (d < 1 || g < 0) throw Error(ErrorCode::kInvalidTuple, "M_{d,g} needs d >= 1 and g >= 0");
  const int m = 1 + d + g;
  const Complex i(0.0, 1.0);
  std::vector<CMatrix> a;
  for (int k = 0; k < d; ++k) {
    a.push_back(-sym_unit(m, 0, k + 1));
    CMatrix v = CMatrix::Zero(m, m);
    v(0, k + 1) = -i;
    v(k + 1, 0) = i;
    a.push_back(std::move(v));
  }
  for (int j = 0; j < g; ++j) a.push_back(-sym_unit(m, 0, d + j + 1));
  const int vars = 2 * d + g;
  return {"mdg:" + std::to_string(d) + "," + std::to_string(g),
          LinearPencil(MatrixTuple(vars, m, std::move(a), Field::kComplex)), d, g,
          "U_1,V_1,...,U_d,V_d,X_1..X_g with T_i = U_i + i V_i"};
}

NamedSpectrahedron pauli_disk() {
  return {"pauli", LinearPencil(pauli_pair()), 0, 2, "x_1, x_2"};
}

NamedSpectrahedron by_name(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "pauli" && colon == std::string::npos) return pauli_disk();
  if (head == "cube") return free_cube(parse_int(tail, spec));
  if (head == "ball") return matrix_ball(parse_int(tail, spec));
  if (head == "mdg") {
    const auto comma = tail.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::kUnknownName, "mdg needs 'mdg:d,g'");
    return mdg_pencil(parse_int(tail.substr(0, comma), spec), parse_int(tail.substr(comma + 1), spec));
  }
  throw Error(ErrorCode::kUnknownName, "unknown set '" + spec + "'");
}

std::vector<std::string> registry() { return {"cube:g", "ball:g", "mdg:d,g", "pauli"}; }

MatrixTuple mdg_coordinates(const std::vector<CMatrix>& t, const MatrixTuple& x) {
  const Complex i(0.0, 1.0);
  std::vector<CMatrix> out;
  const int n = x.n();
  for (const auto& ti : t) {
    if (ti.rows() != n || ti.cols() != n) throw Error(ErrorCode::kDimensionMismatch, "T_i must be n x n");
    out.push_back(0.5 * (ti + ti.adjoint()));
    out.push_back((ti - ti.adjoint()) / (2.0 * i));
  }
  for (int j = 0; j < x.g(); ++j) out.push_back(x[j]);
  const int g = static_cast<int>(out.size());
  return MatrixTuple(g, n, std::move(out), Field::kComplex);
}

MatrixTuple pauli_pair() {
  RMatrix z(2, 2);
  z << 1, 0, 0, -1;
  RMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return MatrixTuple::from_real({z, x});
}

MatrixTuple halmos_dilation(const MatrixTuple& x, double tol) {
  const int n = x.n();
  std::vector<CMatrix> out;
  for (int j = 0; j < x.g(); ++j) {
    const auto eig = linalg::hermitian_eigen(x[j], x.field());
    if (eig.values(0) < -1.0 - tol || eig.values(eig.values.size() - 1) > 1.0 + tol)
      throw Error(ErrorCode::kOutsideCube, "entry " + std::to_string(j) + " has norm above 1");
    const CMatrix r = linalg::psd_sqrt(CMatrix::Identity(n, n) - x[j] * x[j], x.field());
    CMatrix h(2 * n, 2 * n);
    h << x[j], r, r, -x[j];
    out.push_back(std::move(h));
  }
  return MatrixTuple(x.g(), 2 * n, std::move(out), x.field());
}

M1gDilation m1g_maximal_dilation(const CMatrix& t, const MatrixTuple& x) {
  const int n = static_cast<int>(t.rows());
  if (n == 0 || t.cols() != n || x.n() != n) throw Error(ErrorCode::kDimensionMismatch, "T and X must be n x n, n >= 1");
  const bool real_t = t.imag().cwiseAbs().maxCoeff() == 0.0;
  const Field f = (real_t && x.field() == Field::kReal) ? Field::kReal : Field::kComplex;

  Eigen::JacobiSVD<CMatrix> svd(t);
  const double smin = svd.singularValues()(n - 1);
  if (!(smin > 1e-12 * std::max(1.0, svd.singularValues()(0)))) throw Error(ErrorCode::kSingularT, "T is singular");

  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix p = id - t * t.adjoint();
  for (int j = 0; j < x.g(); ++j) p -= x[j] * x[j];
  p = linalg::symmetrize(p);
  const double pmin = linalg::min_eigenvalue(p, f);
  if (!(pmin > 1e-12))
    throw Error(ErrorCode::kNotStrictContraction, "lambda_min(I - TT* - sum X^2) = " + std::to_string(pmin));

  M1gDilation out;
  out.a = linalg::psd_sqrt(p, f);
  const CMatrix tinv_adj = t.inverse().adjoint();
  double delta = smin / 2;
  for (int halvings = 0;; ++halvings) {
    out.c = delta * id;
    out.b = -out.c * out.a.adjoint() * tinv_adj;
    const CMatrix bc = linalg::symmetrize(out.b * out.b.adjoint() + out.c * out.c.adjoint());
    if (linalg::max_eigenvalue(bc, f) <= 1.0 - 1e-6) break;
    if (halvings > 200) throw Error(ErrorCode::kNotStrictContraction, "delta underflow");
    delta /= 2;
  }
  out.delta = delta;
  out.d = linalg::psd_sqrt(id - out.b * out.b.adjoint() - out.c * out.c.adjoint(), f);

  out.s = CMatrix(2 * n, 2 * n);
  out.s << t, out.a, out.b, out.c;
  std::vector<CMatrix> y;
  for (int j = 0; j < x.g(); ++j) {
    CMatrix yj = CMatrix::Zero(2 * n, 2 * n);
    yj.topLeftCorner(n, n) = x[j];
    if (j == 0) yj.bottomRightCorner(n, n) = out.d;
    y.push_back(std::move(yj));
  }
  if (f == Field::kReal) {
    out.s = out.s.real().cast<Complex>();
    for (auto& m : y) m = m.real().cast<Complex>();
  }
  out.y = MatrixTuple(x.g(), 2 * n, std::move(y), f);
  return out;
}

}  // namespace freespec::examples
