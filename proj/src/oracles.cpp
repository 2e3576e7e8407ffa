#include "freespec/oracles.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <numbers>

namespace freespec::oracles {

namespace {

double lmin(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lmax(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Right singular vectors of a PSD matrix with small singular values.
CMatrix svd_kernel(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double thr = 1e-8 * std::max(1.0, s(0));
  int k = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) <= thr) ++k;
  return svd.matrixV().rightCols(k);
}

// Orthonormal basis of ker(system) via FullPivLU + QR.
template <typename Mat>
Mat lu_kernel(const Mat& system) {
  const int cols = static_cast<int>(system.cols());
  if (system.rows() == 0 || system.cwiseAbs().maxCoeff() == 0.0) return Mat::Identity(cols, cols);
  Eigen::FullPivLU<Mat> lu(system);
  lu.setThreshold(1e-8);
  const Mat k = lu.kernel();
  if (lu.rank() == cols) return Mat(cols, 0);
  Eigen::HouseholderQR<Mat> qr(k);
  return qr.householderQ() * Mat::Identity(k.rows(), k.cols());
}

std::vector<CMatrix> herm_basis(int n, bool complex) {
  std::vector<CMatrix> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      out.push_back(e);
      if (complex && i != j) {
        CMatrix f = CMatrix::Zero(n, n);
        f(i, j) = Complex(0, 1);
        f(j, i) = Complex(0, -1);
        out.push_back(f);
      }
    }
  }
  return out;
}

RVector realify(const CMatrix& m, bool complex) {
  RVector out(complex ? 2 * m.size() : m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    out(i) = m.data()[i].real();
    if (complex) out(m.size() + i) = m.data()[i].imag();
  }
  return out;
}

MatrixTuple dilate(const MatrixTuple& x, const CMatrix& beta, const RVector& psi, double alpha, Field f) {
  const int n = x.n();
  std::vector<CMatrix> out;
  for (int j = 0; j < x.g(); ++j) {
    CMatrix y = CMatrix::Zero(n + 1, n + 1);
    y.topLeftCorner(n, n) = x[j];
    for (int i = 0; i < n; ++i) {
      y(i, n) = alpha * beta(i, j);
      y(n, i) = std::conj(alpha * beta(i, j));
    }
    y(n, n) = psi(j);
    out.push_back(y);
  }
  return MatrixTuple(x.g(), n + 1, std::move(out), f, 1e-8);
}

// Independent dilation subspace: columns are vec(beta) with beta n x g.
CMatrix independent_subspace(const LinearPencil& a, const MatrixTuple& x, bool complex) {
  const int n = x.n();
  const int g = a.g();
  const int m = a.m();
  const CMatrix k = svd_kernel(evaluate_L(a, x));
  if (k.cols() == 0) return CMatrix::Identity(n * g, n * g);
  // Row (r, c) of Lambda_A(beta*) K is sum_j sum_i A_j(r, s) conj(beta_j(i)) K(s*n + i, c).
  CMatrix system = CMatrix::Zero(m * k.cols(), n * g);
  for (int j = 0; j < g; ++j)
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < k.cols(); ++c)
        for (int r = 0; r < m; ++r) {
          Complex acc = 0;
          for (int s = 0; s < m; ++s) acc += a[j](r, s) * k(s * n + i, c);
          system(c * m + r, j * n + i) = acc;
        }
  CMatrix gamma;
  if (complex) {
    gamma = lu_kernel<CMatrix>(system);
  } else {
    gamma = lu_kernel<RMatrix>(system.real()).cast<Complex>();
  }
  return gamma.conjugate();
}

CMatrix random_vector(int size, bool complex, linalg::Rng& rng) {
  std::normal_distribution<double> nd;
  CMatrix v(size, 1);
  for (int i = 0; i < size; ++i) v(i, 0) = complex ? Complex(nd(rng), nd(rng)) : Complex(nd(rng), 0.0);
  return v / v.norm();
}

double boundary_bisect(const std::function<double(double)>& f, double feas, double cap) {
  if (f(0.0) < -feas) return 0.0;
  double lo = 0;
  double hi = std::min(1.0, cap);
  while (f(hi) >= -feas) {
    lo = hi;
    if (hi >= cap) return cap;
    hi = std::min(2 * hi, cap);
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= -feas ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

SearchReport search_nontrivial_dilation(const LinearPencil& a, const MatrixTuple& x, long trials, std::uint64_t seed,
                                        double feas_tol) {
  SearchReport rep;
  rep.best_violation = -std::numeric_limits<double>::infinity();
  const Field f = join(a.field(), x.field());
  const bool complex = f == Field::kComplex;
  const int n = x.n();
  const int g = a.g();
  linalg::Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> nd;
  const CMatrix sub = independent_subspace(a, x, complex);

  auto attempt = [&](const CMatrix& beta_vec, const RVector& psi, double alpha, const char* kind) {
    CMatrix beta = Eigen::Map<const CMatrix>(beta_vec.data(), n, g);
    const double e = lmin(evaluate_L(a, dilate(x, beta, psi, alpha, f)));
    if (e >= -feas_tol) {
      rep.found = true;
      rep.kind = kind;
      rep.dilation = DilationWitness{beta, psi, alpha, e};
      return true;
    }
    rep.best_violation = std::max(rep.best_violation, e);
    return false;
  };

  for (long t = 0; t < trials && !rep.found; ++t) {
    rep.trials = t + 1;
    if (t % 2 == 0 && sub.cols() > 0) {
      CMatrix c = random_vector(static_cast<int>(sub.cols()), complex, rng);
      const CMatrix beta = sub * c;
      for (int k = 0; k <= 10 && !rep.found; ++k) attempt(beta, RVector::Zero(g), std::ldexp(1.0, -k), "subspace");
      continue;
    }
    const CMatrix beta = random_vector(n * g, complex, rng);
    RVector psi = RVector::Zero(g);
    if (unif(rng) < 0.5) {
      RVector d(g);
      for (int j = 0; j < g; ++j) d(j) = nd(rng);
      CMatrix lam = CMatrix::Zero(a.m(), a.m());
      for (int j = 0; j < g; ++j) lam += d(j) * a[j];
      const double top = lmax(lam);
      if (top > 1e-12) psi = d * (unif(rng) / top);
    }
    attempt(beta, psi, 0.05, "uniform");
  }
  return rep;
}

SearchReport refute_matrix_extreme(const LinearPencil& a, const MatrixTuple& x, long trials, std::uint64_t seed,
                                   double feas_tol) {
  const int n = x.n();
  if (n > 3) throw Error(ErrorCode::kLevelTooLarge, "refute_matrix_extreme needs n <= 3");
  SearchReport rep;
  rep.best_violation = -std::numeric_limits<double>::infinity();
  const Field f = join(a.field(), x.field());
  const bool complex = f == Field::kComplex;
  const int g = a.g();
  linalg::Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> nd;
  const auto basis = herm_basis(n, complex);
  const int nb = static_cast<int>(basis.size());

  auto tuple_of = [&](const RVector& coords) {
    std::vector<CMatrix> h;
    for (int j = 0; j < g; ++j) {
      CMatrix m = CMatrix::Zero(n, n);
      for (int b = 0; b < nb; ++b) m += coords(j * nb + b) * basis[static_cast<size_t>(b)];
      h.push_back(m);
    }
    return MatrixTuple(g, n, std::move(h), f);
  };
  auto shifted = [&](const MatrixTuple& h, double t) {
    std::vector<CMatrix> out;
    for (int j = 0; j < g; ++j) out.push_back(x[j] + t * h[j]);
    return MatrixTuple(g, n, std::move(out), f, 1e-8);
  };

  // Reducing subspace from the commutant, computed with an LU kernel.
  if (n >= 2) {
    RMatrix sys(g * (complex ? 2 : 1) * n * n, nb);
    for (int b = 0; b < nb; ++b)
      for (int j = 0; j < g; ++j) {
        const CMatrix c = basis[static_cast<size_t>(b)] * x[j] - x[j] * basis[static_cast<size_t>(b)];
        sys.block(j * (complex ? 2 : 1) * n * n, b, (complex ? 2 : 1) * n * n, 1) = realify(c, complex);
      }
    const RMatrix comm = lu_kernel<RMatrix>(sys);
    if (comm.cols() > 1) {
      CMatrix s = CMatrix::Zero(n, n);
      for (int c = 0; c < comm.cols(); ++c) {
        const double w = nd(rng);
        for (int b = 0; b < nb; ++b) s += w * comm(b, c) * basis[static_cast<size_t>(b)];
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
      const auto& ev = es.eigenvalues();
      const double spread = ev(n - 1) - ev(0);
      int cut = 0;
      for (int i = 0; i + 1 < n; ++i)
        if (ev(i + 1) - ev(i) > 1e-6 * spread) {
          cut = i + 1;
          break;
        }
      if (cut > 0) {
        MatrixConvexCombination c;
        c.target_dim = n;
        for (auto [start, len] : {std::pair{0, cut}, std::pair{cut, n - cut}}) {
          const CMatrix v = es.eigenvectors().middleCols(start, len);
          c.terms.push_back({v.adjoint(), x.compress(v)});
        }
        if (verify_combination(c, x)) {
          rep.found = true;
          rep.kind = "reducing subspace";
          rep.combination = c;
          return rep;
        }
      }
    }
  }

  // Face directions: project random hermitian tuples onto {H : Lambda_A(H) K = 0}.
  const CMatrix k = svd_kernel(evaluate_L(a, x));
  RMatrix face(0, g * nb);
  if (k.cols() > 0) {
    const int per = (complex ? 2 : 1) * static_cast<int>(a.m() * n * k.cols());
    face.resize(per, g * nb);
    for (int j = 0; j < g; ++j)
      for (int b = 0; b < nb; ++b)
        face.col(j * nb + b) = realify(linalg::kron(a[j], basis[static_cast<size_t>(b)]) * k, complex);
  }
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod;
  if (face.rows() > 0) cod.compute(face);

  for (long t = 0; t < trials && !rep.found; ++t) {
    rep.trials = t + 1;
    if (t % 2 == 0) {
      RVector h(g * nb);
      for (int i = 0; i < h.size(); ++i) h(i) = nd(rng);
      if (face.rows() > 0) h -= cod.solve(face * h);
      if (h.norm() < 1e-8) continue;
      h.normalize();
      const MatrixTuple dir = tuple_of(h);
      auto fp = [&](double s) { return lmin(evaluate_L(a, shifted(dir, s))); };
      auto fm = [&](double s) { return lmin(evaluate_L(a, shifted(dir, -s))); };
      const double step = std::min(boundary_bisect(fp, feas_tol, 1e3), boundary_bisect(fm, feas_tol, 1e3));
      if (step > 1e-6) {
        MatrixConvexCombination c;
        c.target_dim = n;
        const CMatrix half = CMatrix::Identity(n, n) * std::sqrt(0.5);
        c.terms.push_back({half, shifted(dir, step)});
        c.terms.push_back({half, shifted(dir, -step)});
        if (verify_combination(c, x)) {
          rep.found = true;
          rep.kind = "face split";
          rep.combination = c;
        }
      } else {
        rep.best_violation = std::max(rep.best_violation, step);
      }
      continue;
    }
    // Mixture with a random boundary sample at a level k <= n.
    const int level = 1 + static_cast<int>(unif(rng) * n) % n;
    const MatrixTuple x1 = sample_point(a, level, f, SampleKind::kBoundary, rng);
    const CMatrix w = linalg::random_isometry(n, level, f, rng).adjoint();  // level x n, w w* = I
    // Weights and separations are kept macroscopic: with a tiny weight or a
    // summand next to X, a curved boundary hides the violation below feas_tol.
    double sep = 0;
    for (int j = 0; j < g; ++j) sep += (x1[j] - w * x[j] * w.adjoint()).squaredNorm();
    if (std::sqrt(sep) < 1e-3 * (1 + x.norm())) continue;
    const double tt = std::pow(10.0, -2.0 + std::log10(50.0) * unif(rng));
    const CMatrix rest = CMatrix::Identity(n, n) - tt * w.adjoint() * w;
    const CMatrix g2 = linalg::psd_sqrt(rest, f);
    const CMatrix g2inv = g2.inverse();
    std::vector<CMatrix> x2;
    for (int j = 0; j < g; ++j) x2.push_back(g2inv.adjoint() * (x[j] - tt * w.adjoint() * x1[j] * w) * g2inv);
    const MatrixTuple x2t(g, n, std::move(x2), f, 1e-6);
    const double e = lmin(evaluate_L(a, x2t));
    if (e >= -feas_tol) {
      MatrixConvexCombination c;
      c.target_dim = n;
      c.terms.push_back({std::sqrt(tt) * w, x1});
      c.terms.push_back({g2, x2t});
      if (verify_combination(c, x)) {
        rep.found = true;
        rep.kind = "mixture";
        rep.combination = c;
      }
    } else {
      rep.best_violation = std::max(rep.best_violation, e);
    }
  }
  return rep;
}

bool verify_combination(const MatrixConvexCombination& c, const MatrixTuple& x, const Tolerances& tol) {
  if (c.terms.empty() || c.target_dim != x.n()) return false;
  CMatrix mass = CMatrix::Zero(x.n(), x.n());
  std::vector<CMatrix> rec(static_cast<size_t>(x.g()), CMatrix::Zero(x.n(), x.n()));
  for (const auto& t : c.terms) {
    if (t.gamma.cols() != x.n() || t.gamma.rows() != t.point.n() || t.point.g() != x.g()) return false;
    mass += t.gamma.adjoint() * t.gamma;
    for (int j = 0; j < x.g(); ++j) rec[static_cast<size_t>(j)] += t.gamma.adjoint() * t.point[j] * t.gamma;
  }
  if ((mass - CMatrix::Identity(x.n(), x.n())).norm() > tol.comb) return false;
  double err = 0;
  for (int j = 0; j < x.g(); ++j) err += (rec[static_cast<size_t>(j)] - x[j]).squaredNorm();
  return std::sqrt(err) <= tol.reconstruct * (1.0 + x.norm());
}

namespace {

std::vector<RVector> unit_directions(int k, int count, bool half_circle) {
  std::vector<RVector> out;
  if (k == 1) {
    out.push_back(RVector::Ones(1));
    if (!half_circle) out.push_back(-RVector::Ones(1));
    return out;
  }
  const double span = half_circle ? std::numbers::pi : 2 * std::numbers::pi;
  for (int i = 0; i < count; ++i) {
    const double th = span * i / count;
    RVector u(2);
    u << std::cos(th), std::sin(th);
    out.push_back(u);
  }
  return out;
}

void require_small(int k) {
  if (k > 2) throw Error(ErrorCode::kLevelTooLarge, "grid oracles support at most 2 variables");
}

}  // namespace

double grid_radius(const AffinePencil& p, const RVector& center) {
  const int k = p.num_vars();
  require_small(k);
  if (k == 0) return 0;
  double best = 0;
  for (const auto& u : unit_directions(k, 720, false)) {
    auto f = [&](double t) { return lmin(p.at(center + t * u)); };
    const double t = boundary_bisect(f, 0.0, 1e6);
    if (t >= 1e6) throw Error(ErrorCode::kUnboundedDirection, "grid_radius: unbounded direction");
    best = std::max(best, t);
  }
  return 1.5 * best;
}

GridResult grid_margin(const AffinePencil& p, const RVector& center, double radius, int points, int zooms) {
  const int k = p.num_vars();
  require_small(k);
  GridResult res;
  res.argmax = center;
  res.value = lmin(p.at(center));
  if (k == 0) return res;
  RVector c = center;
  double r = radius;
  for (int z = 0; z < zooms && r > 1e-12; ++z) {
    RVector best = c;
    double best_val = lmin(p.at(c));
    const int py = k == 2 ? points : 1;
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j < py; ++j) {
        RVector y = c;
        y(0) += r * (2.0 * i / (points - 1) - 1.0);
        if (k == 2) y(1) += r * (2.0 * j / (points - 1) - 1.0);
        const double v = lmin(p.at(y));
        if (v > best_val) {
          best_val = v;
          best = y;
        }
      }
    }
    c = best;
    r *= 0.7;
    if (best_val > res.value) {
      res.value = best_val;
      res.argmax = best;
    }
  }
  return res;
}

namespace {

// Golden-section maximum of a concave function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(a), f(b)});
}

}  // namespace

double grid_max_alpha(const LinearPencil& a, const MatrixTuple& x, const CMatrix& beta, int bisections, double feas) {
  const int g = a.g();
  require_small(g);
  const int n = x.n();
  const Field f = join(a.field(), x.field());
  AffinePencil level1;
  level1.field = a.field();
  level1.constant = CMatrix::Identity(a.m(), a.m());
  for (int j = 0; j < g; ++j) level1.directions.push_back(-a[j]);
  const double radius = grid_radius(level1, RVector::Zero(g));

  // psi ranges over the box [-radius, radius]^g, which contains the level-1 set.
  // A dense grid first; lambda_min is concave in psi, so nested golden-section
  // search settles the thin sets near the frontier that the grid misses.
  auto feasible = [&](double alpha) {
    const CMatrix base = evaluate_L(a, dilate(x, beta, RVector::Zero(g), alpha, f));
    CMatrix corner = CMatrix::Zero(n + 1, n + 1);
    corner(n, n) = 1.0;
    std::vector<CMatrix> dirs;
    for (int j = 0; j < g; ++j) dirs.push_back(-linalg::kron(a[j], corner));
    auto at = [&](double p0, double p1) {
      CMatrix m = base + p0 * dirs[0];
      if (g == 2) m += p1 * dirs[1];
      return lmin(m);
    };
    const int pts = 41;
    const int py = g == 2 ? pts : 1;
    for (int i = 0; i < pts; ++i)
      for (int j = 0; j < py; ++j) {
        const double p0 = radius * (2.0 * i / (pts - 1) - 1.0);
        const double p1 = g == 2 ? radius * (2.0 * j / (pts - 1) - 1.0) : 0.0;
        if (at(p0, p1) >= -feas) return true;
      }
    std::function<double(double)> inner = [&](double p0) {
      if (g == 1) return at(p0, 0.0);
      return golden_max([&](double p1) { return at(p0, p1); }, -radius, radius, 80);
    };
    return golden_max(inner, -radius, radius, 80) >= -feas;
  };
  double lo = 0;
  double hi = 1;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > 1e9) throw Error(ErrorCode::kUnboundedAlpha, "grid_max_alpha: alpha unbounded");
  }
  for (int i = 0; i < bisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

double longest_chord(const AffinePencil& p, const RVector& y, int directions, double feas) {
  const int k = p.num_vars();
  require_small(k);
  double best = 0;
  for (const auto& u : unit_directions(k, directions, true)) {
    auto fp = [&](double t) { return lmin(p.at(y + t * u)); };
    auto fm = [&](double t) { return lmin(p.at(y - t * u)); };
    best = std::max(best, std::min(boundary_bisect(fp, feas, 1e6), boundary_bisect(fm, feas, 1e6)));
  }
  return best;
}

}  // namespace freespec::oracles
