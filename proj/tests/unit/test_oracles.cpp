#include "freespec/dilation.hpp"
#include "freespec/oracles.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace freespec;
using namespace testutil;

TEST(Oracles, DilationSearch) {
  const LinearPencil c = cube(2);
  const auto unitary = oracles::search_nontrivial_dilation(c, MatrixTuple({sz(), sx()}, Field::kReal), 10000, 1);
  EXPECT_FALSE(unitary.found);
  EXPECT_EQ(unitary.trials, 10000);
  const auto interior = oracles::search_nontrivial_dilation(c, point({0.1, 0.2}), 100, 2);
  EXPECT_TRUE(interior.found);
  const auto edge = oracles::search_nontrivial_dilation(c, point({1, 0.3}), 100, 3);
  ASSERT_TRUE(edge.found);
  ASSERT_TRUE(edge.dilation.has_value());
  EXPECT_GE(edge.dilation->min_eigenvalue, -1e-9);
  EXPECT_GT(edge.dilation->alpha, 0);
}

TEST(Oracles, Refutation) {
  const LinearPencil c = cube(2);
  const auto edge = oracles::refute_matrix_extreme(c, point({1, 0.3}), 200, 1);
  ASSERT_TRUE(edge.found);
  ASSERT_TRUE(edge.combination.has_value());
  EXPECT_TRUE(oracles::verify_combination(*edge.combination, point({1, 0.3})));
  EXPECT_FALSE(oracles::refute_matrix_extreme(c, point({1, 1}), 200, 2).found);
  EXPECT_THROW(oracles::refute_matrix_extreme(c, MatrixTuple::zero(2, 4, Field::kReal), 10, 0), Error);
}

TEST(Oracles, RefutationAgreesWithMatrixExtremeAtLevelOne) {
  linalg::Rng rng(61);
  int disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool cube_case = trial % 4 == 0;
    const LinearPencil a = cube_case ? cube(2) : random_bounded_pencil(2 + trial % 3, 2, Field::kReal, rng);
    MatrixTuple x = sample_point(a, 1, Field::kReal, SampleKind::kBoundary, rng);
    const bool extreme = matrix_extreme_test(a, x);
    const bool refuted = oracles::refute_matrix_extreme(a, x, 200, static_cast<std::uint64_t>(trial)).found;
    if (extreme == refuted) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Oracles, VerifyCombination) {
  const LinearPencil c = cube(2);
  const MatrixTuple x = point({0.2, -0.1});
  const Decomposition d = decompose_to_free_extremes(c, x);
  MatrixConvexCombination comb = d.combination();
  EXPECT_TRUE(oracles::verify_combination(comb, x));
  for (auto& t : comb.terms) t.gamma *= 1.01;
  EXPECT_FALSE(oracles::verify_combination(comb, x));
  const MatrixConvexCombination id{{{CMatrix::Identity(1, 1), x}}, 1};
  EXPECT_TRUE(oracles::verify_combination(id, x));
}

TEST(Oracles, GridHelpers) {
  const AffinePencil disk = level1(examples::pauli_disk().pencil);
  EXPECT_NEAR(oracles::grid_radius(disk, RVector::Zero(2)), 1.5, 1e-6);
  const auto m = oracles::grid_margin(disk, RVector::Zero(2), 2.0);
  EXPECT_NEAR(m.value, 1.0, 1e-9);
  RVector on_circle(2);
  on_circle << 0.6, 0.8;
  EXPECT_LT(oracles::longest_chord(disk, on_circle), 1e-4);
  EXPECT_NEAR(oracles::longest_chord(disk, RVector::Zero(2)), 1.0, 1e-6);
  EXPECT_NEAR(oracles::grid_max_alpha(cube(1), point({0}), CMatrix::Ones(1, 1)), 1.0, 1e-6);
  EXPECT_THROW(oracles::grid_radius(level1(cube(3)), RVector::Zero(3)), Error);
}
