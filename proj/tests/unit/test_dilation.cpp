#include "freespec/dilation.hpp"
#include "freespec/oracles.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace freespec;
using namespace testutil;

TEST(OneDilation, IntervalZero) {
  const DilationCandidate d = maximal_one_dilation(cube(1), point({0}));
  EXPECT_EQ(d.dim_before, 1);
  EXPECT_EQ(d.dim_after, 0);
  ASSERT_EQ(d.y_hat.n(), 2);
  // A 2 x 2 self-adjoint unitary with zero corner: eigenvalues +-1.
  const auto es = linalg::hermitian_eigen(d.y_hat[0], Field::kReal);
  EXPECT_NEAR(es.values(0), -1.0, 1e-8);
  EXPECT_NEAR(es.values(1), 1.0, 1e-8);
  EXPECT_NEAR(d.y_hat[0](0, 0).real(), 0.0, 0);
}

TEST(OneDilation, AlreadyMaximal) {
  const MatrixTuple x = direct_sum(MatrixTuple({sz(), sx()}, Field::kReal), point({1, -1}));
  try {
    maximal_one_dilation(cube(2), x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlreadyMaximal);
  }
}

TEST(OneDilation, RejectsComplexAndOutside) {
  EXPECT_THROW(maximal_one_dilation(cube(1), point({1.5})), Error);
  const MatrixTuple c({scalar(0)}, Field::kComplex);
  try {
    maximal_one_dilation(cube(1), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldUnsupported);
  }
}

TEST(OneDilation, RandomCubePointsReachZeroInAtMostTwoSteps) {
  linalg::Rng rng(41);
  const LinearPencil c = cube(2);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixTuple x = sample_point(c, 1, Field::kReal, SampleKind::kInterior, rng);
    int steps = 0;
    while (dilation_subspace(c, x).dim > 0) {
      const DilationCandidate d = maximal_one_dilation(c, x, {}, {static_cast<std::uint64_t>(trial), false});
      EXPECT_LT(d.dim_after, d.dim_before);
      EXPECT_GE(linalg::min_eigenvalue(evaluate_L(c, d.y_hat), Field::kReal), -1e-8);
      // The dilation compresses back to X.
      EXPECT_LT(distance(d.y_hat.compress(CMatrix::Identity(x.n() + 1, x.n())), x), 1e-14);
      x = d.y_hat;
      ++steps;
    }
    EXPECT_LE(steps, 2);
  }
}

TEST(BlockDiagonalize, IrreducibleIsOneBlock) {
  const MatrixTuple p({sz(), sx()}, Field::kReal);
  const BlockDiagonalization b = block_diagonalize(p);
  ASSERT_EQ(b.blocks.size(), 1u);
  EXPECT_TRUE(unitarily_equivalent(b.blocks[0], p));
}

TEST(BlockDiagonalize, RecoversSummands) {
  linalg::Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Field f = trial % 2 ? Field::kComplex : Field::kReal;
    const MatrixTuple x({linalg::random_hermitian(2, f, rng), linalg::random_hermitian(2, f, rng)}, f);
    const MatrixTuple z({linalg::random_hermitian(1, f, rng), linalg::random_hermitian(1, f, rng)}, f);
    const MatrixTuple y = direct_sum(x, z).compress(linalg::random_unitary(3, f, rng));
    const BlockDiagonalization b = block_diagonalize(y, {}, static_cast<std::uint64_t>(trial));
    ASSERT_EQ(b.blocks.size(), 2u);
    const MatrixTuple& big = b.blocks[0].n() == 2 ? b.blocks[0] : b.blocks[1];
    const MatrixTuple& small = b.blocks[0].n() == 2 ? b.blocks[1] : b.blocks[0];
    EXPECT_TRUE(unitarily_equivalent(big, x));
    EXPECT_TRUE(unitarily_equivalent(small, z));
    EXPECT_LE(b.off_block_residual, 1e-8 * (1 + y.norm()));
  }
}

TEST(BlockDiagonalize, RepeatedSummand) {
  const MatrixTuple p({sz(), sx()}, Field::kReal);
  linalg::Rng rng(43);
  const MatrixTuple y = direct_sum(p, p).compress(linalg::random_unitary(4, Field::kReal, rng));
  const BlockDiagonalization b = block_diagonalize(y);
  ASSERT_EQ(b.blocks.size(), 2u);
  for (const auto& blk : b.blocks) EXPECT_TRUE(unitarily_equivalent(blk, p));
}

TEST(Decompose, FreeExtremeIsItself) {
  const MatrixTuple p({sz(), sx()}, Field::kReal);
  const Decomposition d = decompose_to_free_extremes(cube(2), p);
  ASSERT_EQ(d.summands.size(), 1u);
  EXPECT_EQ(d.steps, 0);
  EXPECT_TRUE(unitarily_equivalent(d.summands[0], p));
  EXPECT_LT(d.residual, 1e-12);
}

TEST(Decompose, CubeOrigin) {
  const Decomposition d = decompose_to_free_extremes(cube(2), point({0, 0}));
  EXPECT_LE(d.total_size, 3);
  EXPECT_LE(d.steps, 2);
  EXPECT_LT(d.residual, 1e-6);
  for (bool c : d.certified) EXPECT_TRUE(c);
  EXPECT_TRUE(oracles::verify_combination(d.combination(), point({0, 0})));
}

TEST(Decompose, MidpointOfVertices) {
  const MatrixTuple x = point({1, 0});
  const Decomposition d = decompose_to_free_extremes(cube(2), x);
  EXPECT_LT(d.residual, 1e-6);
  EXPECT_LE(d.total_size, 3);
  // Any scalar summands are square vertices.
  for (const auto& s : d.summands)
    if (s.n() == 1) {
      EXPECT_NEAR(std::abs(s[0](0, 0).real()), 1.0, 1e-8);
      EXPECT_NEAR(std::abs(s[1](0, 0).real()), 1.0, 1e-8);
    }
}

TEST(Decompose, RandomPencilsSatisfyBounds) {
  linalg::Rng rng(44);
  for (int trial = 0; trial < 8; ++trial) {
    const int g = 2 + trial % 2;
    const int m = 3 + trial % 2;
    const int n = 1 + trial % 3;
    const LinearPencil a = random_bounded_pencil(m, g, Field::kReal, rng);
    const MatrixTuple x = sample_point(a, n, Field::kReal, trial % 2 ? SampleKind::kBoundary : SampleKind::kInterior, rng);
    for (bool presplit : {false, true}) {
      const Decomposition d = decompose_to_free_extremes(a, x, {}, {static_cast<std::uint64_t>(trial), presplit});
      EXPECT_LE(d.total_size, n * (g + 1));
      EXPECT_LE(d.steps, n * g);
      EXPECT_LT(d.residual, 1e-6);
      for (const auto& s : d.summands) EXPECT_TRUE(free_extreme_test(a, s));
      for (const auto& step : d.dilation_trace) EXPECT_LT(step.dim_after, step.dim_before);
    }
  }
}

TEST(Decompose, Errors) {
  try {
    decompose_to_free_extremes(LinearPencil(point({1})), point({0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnboundedDomain);
  }
  try {
    decompose_to_free_extremes(cube(1), point({2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutsideDomain);
  }
}
