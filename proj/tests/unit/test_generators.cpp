#include <gtest/gtest.h>

#include <random>

#include "mare/analysis.hpp"
#include "mare/error.hpp"
#include "mare/generators.hpp"
#include "mare/linalg.hpp"

using namespace mare;

TEST(Rng, DocumentedStream) {
  // uniform01 is (x >> 11) * 2^-53 on std::mt19937_64 outputs
  Rng rng(42);
  std::mt19937_64 ref(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.uniform01(), static_cast<double>(ref() >> 11) * 0x1.0p-53);
  // the 10000th output of the default-seeded engine is fixed by the standard
  std::mt19937_64 std_engine;
  std_engine.discard(9999);
  EXPECT_EQ(std_engine(), 9981545732273789042ULL);
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}

TEST(Fixtures, Names) {
  for (FixtureId id : kAllFixtures) EXPECT_EQ(parse_fixture(to_string(id)), id);
}

TEST(Fixtures, DocumentedSolutionsSolve) {
  for (FixtureId id : kAllFixtures) {
    const Fixture f = fixture(id);
    if (f.phi) EXPECT_LE(residual(f.problem(), *f.phi).norm_max(), 1e-12) << to_string(id);
    for (const Matrix& x : f.other_solutions) EXPECT_LE(residual(f.problem(), x).norm_max(), 1e-12);
    if (f.perturbed_k) {
      const Problem pe = from_k(f.perturbed_k(1e-3), f.n);
      EXPECT_LE(residual(pe, *f.perturbed_phi).norm_max(), 1e-12) << to_string(id);
    }
  }
}

TEST(Fixtures, IrregularFixtureFlagged) {
  const Fixture f = fixture(FixtureId::KM);
  EXPECT_TRUE(f.expect_not_regular);
  EXPECT_EQ(f.k, (Matrix{{0, 0}, {-1, 0}}));
}

TEST(Fixtures, DiscontinuityFamilies) {
  const Fixture d1 = fixture(FixtureId::DISC1);
  EXPECT_EQ(d1.k, Matrix(2, 2));
  EXPECT_EQ(d1.perturbed_k(0.5), (Matrix{{0.5, -0.5}, {-0.5, 0.5}}));
  EXPECT_EQ(*d1.phi, Matrix(1, 1));
  EXPECT_EQ(*d1.perturbed_phi, Matrix{{1}});
}

TEST(Generator, SameSeedSameMatrix) {
  for (auto cat : {Category::Nonsingular, Category::IrreducibleSingular, Category::ReducibleSingularRegular}) {
    GenSpec spec;
    spec.n = 3;
    spec.m = 2;
    spec.seed = 99;
    spec.category = cat;
    EXPECT_EQ(random_generator_k(spec), random_generator_k(spec));
    GenSpec other = spec;
    other.seed = 100;
    EXPECT_NE(random_generator_k(spec), random_generator_k(other));
  }
}

TEST(Generator, NonsingularCategory) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    GenSpec spec;
    spec.seed = s;
    spec.n = 4;
    spec.m = 4;
    const MatrixKind k = categorize(random_generator_k(spec));
    EXPECT_TRUE(k.is_m);
    EXPECT_FALSE(k.singular);
  }
}

TEST(Generator, IrreducibleSingularHasZeroRowSums) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    GenSpec spec;
    spec.seed = s;
    spec.category = Category::IrreducibleSingular;
    const Matrix k = random_generator_k(spec);
    for (double x : k * Vector(k.rows(), 1.0)) EXPECT_NEAR(x, 0.0, 1e-14);
    const MatrixKind kind = categorize(k);
    EXPECT_TRUE(kind.irreducible);
    EXPECT_TRUE(kind.singular);
    // v = e is accepted as a certificate
    ASSERT_TRUE(kind.certificate.has_value());
    for (double x : *kind.certificate) EXPECT_NEAR(x, 1.0, 1e-12);
  }
}

TEST(Generator, ReducibleSingularRegular) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    GenSpec spec;
    spec.seed = s;
    spec.n = 3;
    spec.m = 3;
    spec.category = Category::ReducibleSingularRegular;
    const MatrixKind k = categorize(random_generator_k(spec));
    EXPECT_FALSE(k.irreducible);
    EXPECT_TRUE(k.singular);
    EXPECT_TRUE(k.regular);
    EXPECT_EQ(k.null_rank, 1u);
  }
}

TEST(Generator, ScaledRowsKeepCategory) {
  GenSpec spec;
  spec.seed = 5;
  spec.category = Category::ReducibleSingularRegular;
  spec.zero_row_sums = false;
  const Matrix k = random_generator_k(spec);
  const Vector rs = k * Vector(k.rows(), 1.0);
  double worst = 0;
  for (double x : rs) worst = std::max(worst, std::abs(x));
  EXPECT_GT(worst, 1e-6);
  const MatrixKind kind = categorize(k);
  EXPECT_TRUE(kind.singular);
  EXPECT_TRUE(kind.regular);
}

TEST(Generator, CaseRequests) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    GenSpec spec;
    spec.seed = s;
    spec.category = Category::ReducibleSingularRegular;
    spec.critical = true;
    EXPECT_EQ(classify_case(random_problem(spec)), CaseLabel::CaseIII) << "seed " << s;
    spec.critical = false;
    spec.nonzero_gap = true;
    const CaseLabel c = classify_case(random_problem(spec));
    EXPECT_TRUE(c == CaseLabel::CaseI || c == CaseLabel::CaseII) << "seed " << s;
  }
}

TEST(Generator, ContradictoryRequestRejected) {
  GenSpec spec;
  spec.category = Category::IrreducibleSingular;
  spec.critical = true;
  spec.nonzero_gap = true;
  try {
    random_generator_k(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Perturb, UnitFactorIsIdentity) {
  const Problem p = fixture(FixtureId::EX3).problem();
  EXPECT_EQ(perturb_alpha(p, 1.0), p);
}

TEST(Perturb, CriticalBecomesStochastic) {
  const Problem p = perturb_alpha(fixture(FixtureId::EX3).problem(), 1.01);
  EXPECT_GT(null_data(k_matrix(p), 2).gap, 0.0);
  EXPECT_EQ(classify_case(p), CaseLabel::CaseI);
}

TEST(Perturb, SolutionsConvergeBack) {
  const Fixture f = fixture(FixtureId::EX3);
  SolverOptions o;
  o.method = Method::Schur;
  for (int k = 1; k <= 5; ++k) {
    const double h = std::pow(10.0, -k);
    // above 1 the critical solution stays a solution and stays minimal
    EXPECT_LE(max_abs_diff(solve(perturb_alpha(f.problem(), 1.0 + h), o).phi, *f.phi), 1e-9);
    // below 1 the error is 1 - alpha^2
    const double err = max_abs_diff(solve(perturb_alpha(f.problem(), 1.0 - h), o).phi, *f.phi);
    EXPECT_NEAR(err, h * (2.0 - h), 1e-9) << "alpha = 1 - " << h;
  }
}
