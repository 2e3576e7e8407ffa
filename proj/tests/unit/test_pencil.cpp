#include "freespec/pencil.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace freespec;
using namespace testutil;

namespace {

LinearPencil interval_pencil() { return LinearPencil(point({1})); }

// Canonical shuffle: block (i,k) of A (x) (X (+) Y) to the direct sum ordering.
Eigen::PermutationMatrix<Eigen::Dynamic> shuffle(int m, int nx, int ny) {
  const int n = nx + ny;
  Eigen::VectorXi idx(m * n);
  int pos = 0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < nx; ++k) idx(pos++) = i * n + k;
  for (int i = 0; i < m; ++i)
    for (int k = nx; k < n; ++k) idx(pos++) = i * n + k;
  Eigen::PermutationMatrix<Eigen::Dynamic> p(m * n);
  for (int r = 0; r < m * n; ++r) p.indices()(idx(r)) = r;
  return p;
}

}  // namespace

TEST(Pencil, LambdaAtZeroAndScalar) {
  const LinearPencil c = cube(2);
  EXPECT_EQ(evaluate_lambda(c, MatrixTuple::zero(2, 3, Field::kReal)).norm(), 0.0);
  EXPECT_NEAR(evaluate_lambda(interval_pencil(), point({0.4}))(0, 0).real(), 0.4, 0);
}

TEST(Pencil, LambdaOfDirectSumIsShuffled) {
  linalg::Rng rng(11);
  const LinearPencil a = random_bounded_pencil(3, 2, Field::kReal, rng);
  const MatrixTuple x = sample_point(a, 2, Field::kReal, SampleKind::kInterior, rng);
  const MatrixTuple y = sample_point(a, 1, Field::kReal, SampleKind::kInterior, rng);
  const CMatrix lx = evaluate_lambda(a, x);
  const CMatrix ly = evaluate_lambda(a, y);
  CMatrix blocks = CMatrix::Zero(9, 9);
  blocks.topLeftCorner(6, 6) = lx;
  blocks.bottomRightCorner(3, 3) = ly;
  const auto p = shuffle(3, 2, 1);
  const CMatrix lxy = evaluate_lambda(a, direct_sum(x, y));
  EXPECT_LT((p * lxy * p.transpose() - blocks).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Pencil, EvaluateL) {
  const LinearPencil c = cube(2);
  EXPECT_TRUE(evaluate_L(c, MatrixTuple::zero(2, 2, Field::kReal)).isIdentity());
  const MatrixTuple x({0.5 * sz(), 0.9 * sx()}, Field::kReal);
  EXPECT_GT(linalg::min_eigenvalue(evaluate_L(c, x), Field::kReal), 0.09);
  EXPECT_LT(evaluate_L(interval_pencil(), point({1})).norm(), 1e-16);
}

TEST(Pencil, Membership) {
  const LinearPencil c = cube(1);
  EXPECT_EQ(membership(c, MatrixTuple::zero(1, 2, Field::kReal)).status, MembershipStatus::kInterior);
  const auto b = membership(c, MatrixTuple({CMatrix::Identity(3, 3)}, Field::kReal));
  EXPECT_EQ(b.status, MembershipStatus::kBoundary);
  EXPECT_EQ(b.kernel_dim, 3);
  EXPECT_EQ(membership(c, MatrixTuple({2.0 * CMatrix::Identity(3, 3)}, Field::kReal)).status,
            MembershipStatus::kOutside);
  EXPECT_THROW(membership(c, MatrixTuple::zero(2, 1, Field::kReal)), Error);
}

TEST(Pencil, KernelBasis) {
  EXPECT_EQ(kernel_basis(CMatrix::Identity(3, 3), Field::kReal).cols(), 0);
  const CMatrix k = kernel_basis(diag({0, 1}), Field::kReal);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_NEAR(std::abs(k(0, 0)), 1.0, 1e-15);
  EXPECT_THROW(kernel_basis(diag({-1, 1}), Field::kReal), Error);

  linalg::Rng rng(12);
  const LinearPencil a = random_bounded_pencil(4, 3, Field::kReal, rng);
  const MatrixTuple x = sample_point(a, 2, Field::kReal, SampleKind::kBoundary, rng);
  EXPECT_GE(kernel_basis(evaluate_L(a, x), Field::kReal).cols(), 1);
}

TEST(Pencil, Boundedness) {
  for (int g = 1; g <= 4; ++g) EXPECT_TRUE(is_bounded_level1(cube(g)));
  EXPECT_FALSE(is_bounded_level1(interval_pencil()));
  EXPECT_TRUE(is_bounded_level1(examples::matrix_ball(3).pencil));
  EXPECT_TRUE(is_bounded_level1(examples::pauli_disk().pencil));
  // Real 2 x 2 coefficients with g = 3 span the symmetric matrices.
  linalg::Rng rng(13);
  EXPECT_THROW(random_bounded_pencil(2, 3, Field::kReal, rng, 20), Error);
}

TEST(Pencil, MconvDisk) {
  const MatrixTuple a = examples::pauli_pair();
  for (int k = 0; k < 12; ++k) {
    const double t = 2 * std::numbers::pi * k / 12;
    EXPECT_TRUE(mconv_membership(a, point({std::cos(t), std::sin(t)}))) << t;
  }
  EXPECT_FALSE(mconv_membership(a, point({1.1, 0})));
  EXPECT_FALSE(mconv_membership(a, point({1.01, 0})));
  EXPECT_LT(mconv_membership_report(a, point({1.01, 0})).margin, 0);
  EXPECT_TRUE(mconv_membership(a, a));
}

TEST(Pencil, MconvOfCombinationImage) {
  linalg::Rng rng(14);
  const LinearPencil p = random_bounded_pencil(3, 2, Field::kReal, rng);
  const MatrixTuple& a = p.coefficients();
  // Two isometric compressions of A mixed with weights.
  const CMatrix v1 = linalg::random_isometry(3, 2, Field::kReal, rng);
  const CMatrix v2 = linalg::random_isometry(3, 2, Field::kReal, rng);
  const MatrixConvexCombination c{{{std::sqrt(0.4) * v1, a}, {std::sqrt(0.6) * v2, a}}, 2};
  EXPECT_TRUE(mconv_membership(a, apply_combination(c)));
  EXPECT_FALSE(mconv_membership(a, a.scaled(1.2)));
}

TEST(Pencil, PolarDual) {
  const LinearPencil c = cube(2);
  EXPECT_TRUE(polar_dual_check(c, MatrixTuple::zero(2, 2, Field::kReal), 50, 1));
  // Compression of the coefficients to the first two coordinates: (sigma_z, 0).
  EXPECT_TRUE(polar_dual_check(c, c.coefficients().compress(CMatrix::Identity(4, 2)), 50, 2));
  // 2A is violated at X = (I, ..., I) and nearby samples.
  const MatrixTuple two_a = c.coefficients().scaled(2.0);
  EXPECT_LT(linalg::min_eigenvalue(evaluate_L(LinearPencil(two_a), point({1, 1})), Field::kReal), -0.5);
  EXPECT_FALSE(polar_dual_check(c, two_a, 200, 3));
  EXPECT_THROW(polar_dual_check(interval_pencil(), point({0}), 5, 0), Error);
}

TEST(Pencil, SamplesLandWhereAsked) {
  linalg::Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = trial % 2 ? Field::kComplex : Field::kReal;
    const LinearPencil a = random_bounded_pencil(3, 2, f, rng);
    EXPECT_EQ(membership(a, sample_point(a, 2, f, SampleKind::kBoundary, rng)).status, MembershipStatus::kBoundary);
    EXPECT_EQ(membership(a, sample_point(a, 2, f, SampleKind::kInterior, rng)).status, MembershipStatus::kInterior);
  }
}
