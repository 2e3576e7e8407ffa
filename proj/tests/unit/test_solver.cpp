#include "freespec/oracles.hpp"
#include "freespec/solver.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace freespec;
using namespace testutil;

TEST(Margin, IntervalPencil) {
  const SolveStatus s = feasibility_margin(interval());
  EXPECT_NEAR(s.margin, 1.0, 1e-9);
  EXPECT_NEAR(s.witness(0), 0.0, 1e-6);
  MarginOptions sg;
  sg.method = MarginMethod::kSupergradient;
  EXPECT_NEAR(feasibility_margin(interval(), sg).margin, 1.0, 1e-6);
}

TEST(Margin, ChoiOfIdentityMapIsTight) {
  // A UCP map fixing I, sz, sx sends sy to c sy; the Choi eigenvalues are
  // proportional to 3 + c and 1 - c (three times), so c = 1 and the best
  // margin is exactly 0.
  const MconvResult r = mconv_membership_report(examples::pauli_pair(), examples::pauli_pair());
  EXPECT_TRUE(r.consistent);
  EXPECT_TRUE(r.member);
  EXPECT_GE(r.margin, -1e-9);
  EXPECT_LE(r.margin, 1e-6);
}

TEST(Margin, MatchesGridOnRandomPencils) {
  linalg::Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + trial % 2;
    const LinearPencil a = random_bounded_pencil(3, k, Field::kReal, rng);
    AffinePencil p = level1(a);
    // Shift the constant so the optimum is not at the origin.
    const RVector shift = RVector::Random(k) * 0.3;
    p.constant = p.at(shift);
    const SolveStatus s = feasibility_margin(p);
    const double r = oracles::grid_radius(p, s.witness);
    EXPECT_NEAR(s.margin, oracles::grid_margin(p, RVector::Zero(k), std::max(2.0, r)).value, 1e-4);
  }
}

TEST(Margin, UnboundedIsReported) {
  AffinePencil p;
  p.constant = CMatrix::Identity(1, 1);
  p.directions = {CMatrix::Identity(1, 1)};
  EXPECT_TRUE(feasibility_margin(p).unbounded);
}

TEST(MaxStep, Interval) {
  EXPECT_NEAR(max_step(interval(), RVector::Zero(1), RVector::Ones(1)), 1.0, 1e-12);
  EXPECT_NEAR(max_step(interval(), RVector::Ones(1), RVector::Ones(1)), 0.0, 1e-12);
  EXPECT_THROW(max_step(interval(), RVector::Constant(1, 2.0), RVector::Ones(1)), Error);
  AffinePencil half;
  half.constant = CMatrix::Identity(1, 1);
  half.directions = {CMatrix::Identity(1, 1)};
  EXPECT_THROW(max_step(half, RVector::Zero(1), RVector::Ones(1)), Error);
}

TEST(MaxStep, AgreesWithBisection) {
  linalg::Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const LinearPencil a = random_bounded_pencil(4, 2, Field::kReal, rng);
    const AffinePencil p = level1(a);
    RVector d = RVector::Random(2).normalized();
    const double t = max_step(p, RVector::Zero(2), d);
    double lo = 0;
    double hi = 1e3;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (linalg::min_eigenvalue(p.at(mid * d), Field::kReal) >= 0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(t, lo, 1e-8);
  }
}

TEST(ExtremePoint, DiskLandsOnCircle) {
  const AffinePencil p = level1(examples::pauli_disk().pencil);
  const ExtremePointResult r = extreme_point_of_spectrahedron(p, RVector::Zero(2));
  EXPECT_NEAR(r.point.norm(), 1.0, 1e-6);
  EXPECT_EQ(face_dimension(p, r.point), 0);
}

TEST(ExtremePoint, SquareLandsOnVertex) {
  const AffinePencil p = level1(cube(2));
  RVector start(2);
  start << 0.2, -0.4;
  const ExtremePointResult r = extreme_point_of_spectrahedron(p, start);
  EXPECT_NEAR(std::abs(r.point(0)), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(r.point(1)), 1.0, 1e-9);
  EXPECT_EQ(r.kernel_dim, 2);
  EXPECT_EQ(face_dimension(p, RVector::Zero(2)), 2);
  RVector edge(2);
  edge << 1.0, 0.3;
  EXPECT_EQ(face_dimension(p, edge), 1);
}

TEST(ExtremePoint, RandomCompactSpectrahedra) {
  linalg::Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const LinearPencil a = random_bounded_pencil(2 + trial % 3, 2, Field::kReal, rng);
    const AffinePencil p = level1(a);
    const ExtremePointResult r = extreme_point_of_spectrahedron(p, RVector::Zero(2));
    EXPECT_EQ(face_dimension(p, r.point), 0);
    EXPECT_LT(oracles::longest_chord(p, r.point, 360), 1e-4);
  }
}

TEST(Alpha, CubeZeroGivesOne) {
  const AlphaResult r = maximize_alpha(cube(1), point({0}), CMatrix::Ones(1, 1));
  EXPECT_NEAR(r.alpha, 1.0, 1e-9);
  EXPECT_NEAR(r.psi(0), 0.0, 1e-4);
}

TEST(Alpha, Homogeneous) {
  linalg::Rng rng(24);
  const LinearPencil a = random_bounded_pencil(3, 2, Field::kReal, rng);
  const MatrixTuple x = sample_point(a, 2, Field::kReal, SampleKind::kInterior, rng);
  const CMatrix beta = linalg::random_gaussian(2, 2, Field::kReal, rng);
  const double base = maximize_alpha(a, x, beta).alpha;
  for (double c : {0.5, 3.0}) EXPECT_NEAR(maximize_alpha(a, x, c * beta).alpha, base / c, 1e-8 * base / c);
}

TEST(Alpha, CubeInstancesMatchGrid) {
  linalg::Rng rng(25);
  const LinearPencil c = cube(2);
  for (int trial = 0; trial < 6; ++trial) {
    const MatrixTuple x = sample_point(c, 1 + trial % 2, Field::kReal, SampleKind::kInterior, rng);
    const CMatrix beta = linalg::random_gaussian(x.n(), 2, Field::kReal, rng).normalized();
    EXPECT_NEAR(maximize_alpha(c, x, beta).alpha, oracles::grid_max_alpha(c, x, beta), 1e-5);
  }
}

TEST(Alpha, ReducedPencilMatchesFullDilation) {
  linalg::Rng rng(26);
  const LinearPencil a = random_bounded_pencil(3, 2, Field::kReal, rng);
  const MatrixTuple x = sample_point(a, 2, Field::kReal, SampleKind::kInterior, rng);
  const CMatrix beta = linalg::random_gaussian(2, 2, Field::kReal, rng);
  const AlphaResult r = maximize_alpha(a, x, beta);
  const MatrixTuple y = one_dilation(x, r.alpha * beta, r.psi);
  EXPECT_GE(linalg::min_eigenvalue(evaluate_L(a, y), Field::kReal), -1e-9);
  const double beyond = linalg::min_eigenvalue(
      evaluate_L(a, one_dilation(x, 1.01 * r.alpha * beta, feasibility_margin(GammaPencil(a, x, beta).at_alpha(1.01 * r.alpha)).witness)),
      Field::kReal);
  EXPECT_LT(beyond, 0);
}

TEST(Alpha, InfeasibleBeta) {
  // Boundary point of the interval with beta outside the dilation subspace.
  try {
    maximize_alpha(cube(1), point({1}), CMatrix::Ones(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleBeta);
  }
}
