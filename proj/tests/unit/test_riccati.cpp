#include <gtest/gtest.h>

#include "mare/error.hpp"
#include "mare/generators.hpp"
#include "mare/linalg.hpp"
#include "mare/riccati.hpp"
#include "mare/solvers.hpp"

using namespace mare;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Problem, SplitsK) {
  const Problem p = fixture(FixtureId::EX1).problem();
  EXPECT_EQ(p.d(), (Matrix{{2, -1}, {0, 2}}));
  EXPECT_EQ(p.c(), (Matrix{{1, 0}, {1, 1}}));
  EXPECT_EQ(p.b(), (Matrix{{0, 1}, {0, 1}}));
  EXPECT_EQ(p.a(), (Matrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(k_matrix(p), fixture(FixtureId::EX1).k);
}

TEST(Problem, ScalarSplits) {
  const Problem km = from_k(Matrix{{0, 0}, {-1, 0}}, 1);
  EXPECT_EQ(km.d(), Matrix{{0}});
  EXPECT_EQ(km.c(), Matrix{{0}});
  EXPECT_EQ(km.b(), Matrix{{1}});
  EXPECT_EQ(km.a(), Matrix{{0}});
  const Problem id = from_k(Matrix::identity(2), 1);
  EXPECT_EQ(id.d(), Matrix{{1}});
  EXPECT_EQ(id.c(), Matrix{{0}});
  EXPECT_EQ(id.b(), Matrix{{0}});
  EXPECT_EQ(id.a(), Matrix{{1}});
}

TEST(Problem, RejectsBadInput) {
  EXPECT_EQ(code_of([] { from_k(Matrix{{1, 1}, {0, 1}}, 1); }), ErrorCode::NotZ);
  EXPECT_EQ(code_of([] { from_k(Matrix::identity(2), 0); }), ErrorCode::BadDimensions);
  EXPECT_EQ(code_of([] { from_k(Matrix::identity(2), 2); }), ErrorCode::BadDimensions);
  EXPECT_EQ(code_of([] { Problem(Matrix{{1}}, Matrix(1, 2), Matrix(1, 1), Matrix{{1}}); }),
            ErrorCode::BadDimensions);
}

TEST(HMatrix, FlipsBottomRows) {
  const Fixture f = fixture(FixtureId::EX1);
  Matrix expected = f.k;
  for (std::size_t i = 2; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) expected(i, j) = -expected(i, j);
  EXPECT_EQ(h_matrix(f.problem()), expected);
  EXPECT_EQ(h_matrix(from_k(Matrix(4, 4), 2)), Matrix(4, 4));
}

TEST(Residual, ZeroIterateGivesB) {
  const Problem p = fixture(FixtureId::EX2).problem();
  EXPECT_EQ(residual(p, Matrix(2, 2)), p.b());
}

TEST(Residual, DocumentedSolutionsVanish) {
  EXPECT_LE(residual(fixture(FixtureId::EX1).problem(), Matrix{{0, 0.5}, {0, 0.5}}).norm_max(), 1e-12);
  EXPECT_LE(residual(fixture(FixtureId::EX2).problem(), Matrix{{2, 2}, {1, 1}}).norm_max(), 1e-12);
  EXPECT_LE(residual(fixture(FixtureId::EX3).problem(), Matrix{{0, 1}, {0, 1}}).norm_max(), 1e-12);
}

TEST(Residual, RelativeScale) {
  const Problem p = fixture(FixtureId::SC1).problem();
  // x = 1: R = 1 - 3 - 2 + 1 = -3; denominator 1 + 1 * (1 + 3 + 2) = 7
  EXPECT_NEAR(relative_residual(p, Matrix{{1}}), 3.0 / 7.0, 1e-15);
}

TEST(Dual, IsAnInvolution) {
  const Problem p = fixture(FixtureId::EX1).problem();
  EXPECT_EQ(dual(dual(p)), p);
}

TEST(Dual, KeepsZeroRowSums) {
  const Matrix kd = k_matrix(dual(fixture(FixtureId::EX2).problem()));
  const Vector s = kd * Vector(4, 1.0);
  for (double x : s) EXPECT_EQ(x, 0.0);
}

TEST(Dual, PsiSolvesDualEquation) {
  const Problem p = fixture(FixtureId::EX1).problem();
  SolverOptions o;
  o.method = Method::FixedPoint;
  const Solution s = solve_fixed_point(dual(p), o);
  EXPECT_LE(relative_residual(dual(p), s.phi), 1e-12);
  EXPECT_LT(max_abs_diff(s.phi, Matrix{{0.6, 0.4}, {0.5, 0.5}}), 1e-10);
}

TEST(Reduction, NoZeroDiagonal) {
  const ReductionData red = reduce_zero_diagonal(fixture(FixtureId::EX1).problem());
  EXPECT_EQ(red.r, 0u);
  EXPECT_EQ(red.permutation, (std::vector<std::size_t>{0, 1}));
  ASSERT_TRUE(red.reduced.has_value());
  const Matrix phi{{0.1, 0.2}, {0.3, 0.4}};
  EXPECT_EQ(embed_solution(red, phi), phi);
}

TEST(Reduction, AllRowsZero) {
  // A = 0 and B = 0
  const Problem p = from_k(Matrix{{2, -1, -1}, {-1, 2, 0}, {0, 0, 0}}, 2);
  const ReductionData red = reduce_zero_diagonal(p);
  EXPECT_EQ(red.r, 1u);
  EXPECT_FALSE(red.reduced.has_value());
  EXPECT_EQ(embed_solution(red, Matrix(0, 2)), Matrix(1, 2));
  EXPECT_EQ(solve(p).phi, Matrix(1, 2));
}

TEST(Reduction, DecoupledZeroRow) {
  const Problem p = fixture(FixtureId::DISC2).problem();
  const ReductionData red = reduce_zero_diagonal(p);
  EXPECT_EQ(red.r, 1u);
  ASSERT_TRUE(red.reduced.has_value());
  EXPECT_EQ(red.reduced->m(), 1u);
  EXPECT_EQ(embed_solution(red, Matrix{{1, 0}}), (Matrix{{1, 0}, {0, 0}}));
}

TEST(Reduction, PermutesZeroRowLast) {
  // zero diagonal in the first row of A
  const Matrix k{{2, -1, -1, 0}, {-1, 2, 0, -1}, {0, 0, 0, 0}, {-1, 0, -1, 2}};
  const ReductionData red = reduce_zero_diagonal(from_k(k, 2));
  EXPECT_EQ(red.permutation, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(embed_solution(red, Matrix{{0.7, 0.3}}), (Matrix{{0, 0}, {0.7, 0.3}}));
}

TEST(Reduction, ZeroDiagonalWithCouplingIsIrregular) {
  EXPECT_EQ(code_of([] { reduce_zero_diagonal(fixture(FixtureId::KM).problem()); }), ErrorCode::NotRegular);
}

TEST(Factorization, HoldsAtMinimalPair) {
  const Problem p = fixture(FixtureId::EX1).problem();
  const Solution s = solve(p);
  ASSERT_TRUE(s.psi.has_value());
  const FactorizationReport rep = verify_factorization(p, s.phi, *s.psi);
  EXPECT_TRUE(rep.ok);
  EXPECT_LT(rep.defect, 1e-12);
}

TEST(Factorization, FailsAtZeroPair) {
  const Problem p = fixture(FixtureId::EX1).problem();
  EXPECT_FALSE(verify_factorization(p, Matrix(2, 2), Matrix(2, 2)).ok);
}

TEST(Factorization, ClosedLoopMatricesSingularRegular) {
  const Problem p = fixture(FixtureId::EX2).problem();
  const Solution s = solve(p);
  ASSERT_TRUE(s.psi.has_value());
  const FactorizationReport rep = verify_factorization(p, s.phi, *s.psi);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.r_regular);
  EXPECT_TRUE(rep.s_regular);
  // eigenvalue 0 sits in R (Phi stochastic); S = A - B Psi has eigenvalues 1, 2
  const MatrixKind kr = categorize(clean_z(s.r, 1e-10));
  EXPECT_TRUE(kr.singular);
  EXPECT_TRUE(kr.regular);
  EXPECT_FALSE(categorize(clean_z(*s.s, 1e-10)).singular);
}

TEST(CleanZ, DropsRoundingNoise) {
  const Matrix m{{1, 1e-17}, {-1, 1}};
  EXPECT_FALSE(is_z_matrix(m));
  EXPECT_TRUE(is_z_matrix(clean_z(m)));
  EXPECT_FALSE(is_z_matrix(clean_z(Matrix{{1, 1e-3}, {-1, 1}})));
}
