#include "freespec/tuples.hpp"

#include "freespec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace freespec {

MatrixTuple::MatrixTuple(std::vector<CMatrix> entries, Field field, double sym_tol)
    : g_(static_cast<int>(entries.size())),
      n_(entries.empty() ? 0 : static_cast<int>(entries.front().rows())),
      field_(field),
      entries_(std::move(entries)) {
  validate(sym_tol);
}

MatrixTuple::MatrixTuple(int g, int n, std::vector<CMatrix> entries, Field field, double sym_tol)
    : g_(g), n_(n), field_(field), entries_(std::move(entries)) {
  validate(sym_tol);
}

void MatrixTuple::validate(double sym_tol) {
  const int g = g_;
  const int n = n_;
  const Field field = field_;
  if (g < 0 || n < 0 || static_cast<int>(entries_.size()) != g) {
    throw Error(ErrorCode::kInvalidTuple, "tuple declares g=" + std::to_string(g) + " but holds " +
                                              std::to_string(entries_.size()) + " matrices");
  }
  for (auto& m : entries_) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::kInvalidTuple, "entry of shape " + std::to_string(m.rows()) + "x" +
                                                std::to_string(m.cols()) + " in a tuple of dimension " +
                                                std::to_string(n));
    }
    if (field == Field::kReal && m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0) {
      throw Error(ErrorCode::kInvalidTuple, "real tuple with nonzero imaginary part");
    }
    const double dev = linalg::hermitian_deviation(m);
    if (dev > sym_tol * (1.0 + m.norm())) {
      throw Error(ErrorCode::kInvalidTuple,
                  "entry is not hermitian (deviation " + std::to_string(dev) + ")");
    }
    m = linalg::symmetrize(m);
  }
}

MatrixTuple MatrixTuple::zero(int g, int n, Field field) {
  return MatrixTuple(g, n, std::vector<CMatrix>(static_cast<size_t>(g), CMatrix::Zero(n, n)), field);
}

MatrixTuple MatrixTuple::from_real(const std::vector<RMatrix>& entries) {
  std::vector<CMatrix> c;
  c.reserve(entries.size());
  for (const auto& m : entries) c.push_back(m.cast<Complex>());
  return MatrixTuple(std::move(c), Field::kReal);
}

MatrixTuple MatrixTuple::compress(const CMatrix& u) const {
  if (u.rows() != n_) throw Error(ErrorCode::kDimensionMismatch, "compression of wrong height");
  std::vector<CMatrix> out;
  out.reserve(entries_.size());
  for (const auto& m : entries_) out.push_back(u.adjoint() * m * u);
  const bool real_u = u.imag().size() == 0 || u.imag().cwiseAbs().maxCoeff() == 0.0;
  const Field f = (field_ == Field::kReal && real_u) ? Field::kReal : Field::kComplex;
  if (f == Field::kReal)
    for (auto& m : out) m = m.real().cast<Complex>();
  return MatrixTuple(g_, static_cast<int>(u.cols()), std::move(out), f, 1e-6);
}

MatrixTuple MatrixTuple::scaled(double s) const {
  std::vector<CMatrix> out;
  for (const auto& m : entries_) out.push_back(s * m);
  return MatrixTuple(g_, n_, std::move(out), field_);
}

MatrixTuple MatrixTuple::with_field(Field f) const {
  return MatrixTuple(g_, n_, entries_, f);
}

double MatrixTuple::norm() const {
  double s = 0;
  for (const auto& m : entries_) s += m.squaredNorm();
  return std::sqrt(s);
}

double distance(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.g() != b.g() || a.n() != b.n())
    throw Error(ErrorCode::kDimensionMismatch, "distance between tuples of different shape");
  double s = 0;
  for (int j = 0; j < a.g(); ++j) s += (a[j] - b[j]).squaredNorm();
  return std::sqrt(s);
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.g() != y.g()) throw Error(ErrorCode::kDimensionMismatch, "direct sum needs equal g");
  if (x.field() != y.field()) throw Error(ErrorCode::kDimensionMismatch, "direct sum needs equal fields");
  const int n = x.n() + y.n();
  std::vector<CMatrix> out;
  for (int j = 0; j < x.g(); ++j) {
    CMatrix m = CMatrix::Zero(n, n);
    m.topLeftCorner(x.n(), x.n()) = x[j];
    m.bottomRightCorner(y.n(), y.n()) = y[j];
    out.push_back(std::move(m));
  }
  return MatrixTuple(x.g(), n, std::move(out), x.field());
}

double MatrixConvexCombination::normalization_defect() const {
  CMatrix s = CMatrix::Zero(target_dim, target_dim);
  for (const auto& t : terms) {
    if (t.gamma.cols() == target_dim) s += t.gamma.adjoint() * t.gamma;
  }
  return (s - CMatrix::Identity(target_dim, target_dim)).norm();
}

void MatrixConvexCombination::validate(const Tolerances& tol) const {
  if (terms.empty()) throw Error(ErrorCode::kIllFormedCombination, "combination has no terms");
  const int g = terms.front().point.g();
  for (const auto& t : terms) {
    if (t.gamma.cols() != target_dim || t.gamma.rows() != t.point.n() || t.point.g() != g) {
      throw Error(ErrorCode::kIllFormedCombination, "term shape does not match target dimension");
    }
    if (t.gamma.norm() == 0.0) throw Error(ErrorCode::kIllFormedCombination, "zero gamma");
  }
  const double d = normalization_defect();
  if (d > tol.comb) {
    throw Error(ErrorCode::kIllFormedCombination,
                "sum gamma* gamma deviates from I by " + std::to_string(d));
  }
}

MatrixTuple apply_combination(const MatrixConvexCombination& c, const Tolerances& tol) {
  c.validate(tol);
  const int g = c.terms.front().point.g();
  const int n = c.target_dim;
  Field f = Field::kReal;
  std::vector<CMatrix> out(static_cast<size_t>(g), CMatrix::Zero(n, n));
  for (const auto& t : c.terms) {
    f = join(f, t.point.field());
    if (t.gamma.imag().size() > 0 && t.gamma.imag().cwiseAbs().maxCoeff() > 0.0) f = Field::kComplex;
    for (int j = 0; j < g; ++j) out[static_cast<size_t>(j)] += t.gamma.adjoint() * t.point[j] * t.gamma;
  }
  if (f == Field::kReal)
    for (auto& m : out) m = m.real().cast<Complex>();
  return MatrixTuple(g, n, std::move(out), f, 1e-6);
}

bool is_proper(const MatrixConvexCombination& c, const Tolerances& tol) {
  for (const auto& t : c.terms) {
    if (linalg::numerical_rank(t.gamma, tol.rank) != t.gamma.rows()) return false;
  }
  return true;
}

Commutant self_adjoint_commutant(const MatrixTuple& x, const Tolerances& tol) {
  Commutant out;
  const int n = x.n();
  if (n == 0) return out;
  const auto basis = linalg::hermitian_basis(n, x.field());
  const int per = (x.field() == Field::kReal ? 1 : 2) * n * n;
  RMatrix system(per * x.g(), static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    for (int j = 0; j < x.g(); ++j) {
      const CMatrix c = basis[k] * x[j] - x[j] * basis[k];
      system.block(j * per, static_cast<Eigen::Index>(k), per, 1) = linalg::flatten_real(c, x.field());
    }
  }
  const auto ns = linalg::null_space(system, tol.ker, x.norm());
  out.dim = ns.dim;
  out.smallest_kept = ns.smallest_kept;
  for (int c = 0; c < ns.dim; ++c) {
    CMatrix s = CMatrix::Zero(n, n);
    for (size_t k = 0; k < basis.size(); ++k) s += ns.basis(static_cast<Eigen::Index>(k), c) * basis[k];
    out.basis.push_back(std::move(s));
  }
  return out;
}

IrreducibilityResult irreducible(const MatrixTuple& x, const Tolerances& tol) {
  const auto c = self_adjoint_commutant(x, tol);
  return {x.n() > 0 && c.dim == 1, c.dim};
}

int intertwiner_dim(const MatrixTuple& x, const MatrixTuple& y, const Tolerances& tol) {
  if (x.g() != y.g()) throw Error(ErrorCode::kDimensionMismatch, "intertwiner needs equal g");
  const int nx = x.n();
  const int ny = y.n();
  if (nx == 0 || ny == 0) return 0;
  CMatrix system(static_cast<Eigen::Index>(ny) * nx * x.g(), static_cast<Eigen::Index>(ny) * nx);
  for (int a = 0; a < ny; ++a) {
    for (int b = 0; b < nx; ++b) {
      CMatrix e = CMatrix::Zero(ny, nx);
      e(a, b) = 1.0;
      for (int j = 0; j < x.g(); ++j) {
        const CMatrix r = e * x[j] - y[j] * e;
        system.block(static_cast<Eigen::Index>(j) * ny * nx, static_cast<Eigen::Index>(b) * ny + a,
                     static_cast<Eigen::Index>(ny) * nx, 1) =
            Eigen::Map<const CVector>(r.data(), r.size());
      }
    }
  }
  if (x.g() == 0) return ny * nx;
  return linalg::null_space(system, tol.ker, std::max(x.norm(), y.norm())).dim;
}

bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y, const Tolerances& tol) {
  if (x.g() != y.g()) throw Error(ErrorCode::kDimensionMismatch, "equivalence needs equal g");
  if (x.n() != y.n()) return false;
  if (x.n() == 0) return true;
  const int xy = intertwiner_dim(x, y, tol);
  if (xy == 0) return false;
  return xy == intertwiner_dim(x, x, tol) && xy == intertwiner_dim(y, y, tol);
}

bool word_traces_agree(const MatrixTuple& x, const MatrixTuple& y, int max_length,
                       const Tolerances& tol, long max_words) {
  if (x.g() != y.g()) throw Error(ErrorCode::kDimensionMismatch, "word traces need equal g");
  if (x.n() != y.n()) return false;
  const int n = x.n();
  long words = 0;
  bool agree = true;
  std::function<void(const CMatrix&, const CMatrix&, int)> walk = [&](const CMatrix& px,
                                                                      const CMatrix& py, int len) {
    if (!agree || words >= max_words) return;
    const Complex tx = px.trace();
    const Complex ty = py.trace();
    const double scale = 1.0 + std::max(std::abs(tx), std::abs(ty));
    if (std::abs(tx - ty) > tol.trace * scale) {
      agree = false;
      return;
    }
    ++words;
    if (len == max_length) return;
    for (int j = 0; j < x.g(); ++j) walk(px * x[j], py * y[j], len + 1);
  };
  const CMatrix id = CMatrix::Identity(n, n);
  walk(id, id, 0);
  return agree;
}

GammaPoint gamma_embed(const MatrixTuple& x, const CMatrix& gamma, const Tolerances& tol) {
  if (gamma.rows() != x.n()) throw Error(ErrorCode::kDimensionMismatch, "gamma must have X.n rows");
  const CMatrix mass = gamma.adjoint() * gamma;
  const double tr = mass.trace().real();
  if (std::abs(tr - 1.0) > tol.comb) {
    throw Error(ErrorCode::kBadNormalization, "tr(gamma* gamma) = " + std::to_string(tr));
  }
  return {mass, x.compress(gamma)};
}

}  // namespace freespec
