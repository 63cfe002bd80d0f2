#include <gtest/gtest.h>

#include "mare/generators.hpp"
#include "mare/linalg.hpp"
#include "mare/mmatrix.hpp"

using namespace mare;

TEST(ZMatrix, SignPattern) {
  EXPECT_TRUE(is_z_matrix(fixture(FixtureId::EX1).k));
  EXPECT_FALSE(is_z_matrix(Matrix{{1, 0.5}, {0, 1}}));
  EXPECT_TRUE(is_z_matrix(Matrix{{-5}}));
}

TEST(Irreducible, Digraphs) {
  EXPECT_TRUE(is_irreducible(Matrix{{2, -1}, {-1, 2}}));
  EXPECT_FALSE(is_irreducible(fixture(FixtureId::EX1).k));
  EXPECT_TRUE(is_irreducible(Matrix{{0}}));
  // cycle 0 -> 1 -> 2 -> 0
  EXPECT_TRUE(is_irreducible(Matrix{{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}}));
  EXPECT_FALSE(is_irreducible(Matrix{{1, -1, 0}, {0, 1, -1}, {0, 0, 1}}));
}

TEST(Categorize, SingularNotRegular) {
  const MatrixKind k = categorize(fixture(FixtureId::KM).k);
  EXPECT_TRUE(k.is_z);
  EXPECT_TRUE(k.is_m);
  EXPECT_TRUE(k.singular);
  EXPECT_FALSE(k.irreducible);
  EXPECT_FALSE(k.regular);
  EXPECT_FALSE(k.certificate.has_value());
}

TEST(Categorize, ReducibleSingularRegular) {
  const MatrixKind k = categorize(fixture(FixtureId::EX2).k);
  EXPECT_TRUE(k.is_m);
  EXPECT_TRUE(k.singular);
  EXPECT_FALSE(k.irreducible);
  EXPECT_TRUE(k.regular);
  EXPECT_EQ(k.null_rank, 1u);
}

TEST(Categorize, DiagonallyDominantIsNonsingular) {
  const MatrixKind k = categorize(Matrix{{3, -1}, {-1, 2}});
  EXPECT_TRUE(k.is_m);
  EXPECT_FALSE(k.singular);
  EXPECT_TRUE(k.regular);
  EXPECT_GT(k.spectral_gap, 0.0);
}

TEST(Categorize, NotAnMMatrix) {
  // Z-matrix with a negative eigenvalue
  const MatrixKind k = categorize(Matrix{{1, -2}, {-2, 1}});
  EXPECT_TRUE(k.is_z);
  EXPECT_FALSE(k.is_m);
  EXPECT_FALSE(k.regular);
  EXPECT_FALSE(categorize(Matrix{{1, 1}, {0, 1}}).is_z);
}

TEST(Categorize, NullRankOfDecoupledBlocks) {
  EXPECT_EQ(categorize(fixture(FixtureId::DISC2).k).null_rank, 3u);
}

TEST(Certificate, RowSumZeroGivesOnes) {
  for (auto id : {FixtureId::EX1, FixtureId::EX2, FixtureId::EX3}) {
    const auto v = regularity_certificate(fixture(id).k);
    ASSERT_TRUE(v.has_value());
    for (double x : *v) EXPECT_NEAR(x, 1.0, 1e-12);
  }
}

TEST(Certificate, AbsentForIrregular) { EXPECT_FALSE(regularity_certificate(Matrix{{0, 0}, {-1, 0}}).has_value()); }

TEST(Certificate, PartlyPositiveProduct) {
  const Matrix m{{1, 0, 0}, {0, 1, -1}, {0, -1, 1}};
  const auto v = regularity_certificate(m);
  ASSERT_TRUE(v.has_value());
  const Vector mv = m * *v;
  for (double x : mv) EXPECT_GE(x, -1e-12);
  for (double x : *v) EXPECT_GE(x, 1.0 - 1e-12);
}

TEST(Certificate, NeedsNonuniformWeights) {
  // M e = (-1, 0), while v = (3, 1) gives M v = (1, 0).
  const Matrix m{{1, -2}, {0, 0}};
  const auto v = regularity_certificate(m);
  ASSERT_TRUE(v.has_value());
  const Vector mv = m * *v;
  EXPECT_GE(mv[0], -1e-12);
  EXPECT_GE(mv[1], -1e-12);
}

TEST(Categorize, RandomCategoriesSatisfyImplications) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (auto cat : {Category::Nonsingular, Category::IrreducibleSingular, Category::ReducibleSingularRegular}) {
      GenSpec spec;
      spec.n = 2 + seed % 3;
      spec.m = 1 + seed % 4;
      spec.seed = seed;
      spec.category = cat;
      const MatrixKind k = categorize(random_generator_k(spec));
      EXPECT_TRUE(k.is_z);
      EXPECT_TRUE(k.is_m);
      if (k.irreducible && k.singular) {
        EXPECT_TRUE(k.regular);
      }
      if (k.regular) {
        ASSERT_TRUE(k.certificate.has_value());
      }
    }
  }
}
