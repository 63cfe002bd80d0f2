#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mare/matrix.hpp"
#include "mare/mmatrix.hpp"

namespace mare {

/// X C X - X D - A X + B = 0 with A (m x m), B (m x n), C (n x m), D (n x n).
///
/// The blocks are assembled as K = [D -C; -B A]; construction rejects any
/// input for which K is not a Z-matrix.
class Problem {
 public:
  Problem(Matrix a, Matrix b, Matrix c, Matrix d);

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& c() const noexcept { return c_; }
  const Matrix& d() const noexcept { return d_; }
  std::size_t m() const noexcept { return a_.rows(); }
  std::size_t n() const noexcept { return d_.rows(); }

  friend bool operator==(const Problem&, const Problem&) = default;

 private:
  Matrix a_, b_, c_, d_;
};

/// Splits K at n: D = K[:n,:n], C = -K[:n,n:], B = -K[n:,:n], A = K[n:,n:].
Problem from_k(const Matrix& k, std::size_t n);
Matrix k_matrix(const Problem& p);
/// [D -C; B -A]
Matrix h_matrix(const Problem& p);

/// X C X - X D - A X + B.
Matrix residual(const Problem& p, const Matrix& x);

/// ||R(X)||_F / (||B||_F + ||X||_F (||C||_F ||X||_F + ||D||_F + ||A||_F)).
double relative_residual(const Problem& p, const Matrix& x);

/// Y B Y - Y A - D Y + C = 0 written in the same form (A'=D, B'=C, C'=B, D'=A).
Problem dual(const Problem& p);

/// Zero-diagonal rows of A moved last, reduced to the leading block.
struct ReductionData {
  /// permutation[i] is the original row of A placed at position i.
  std::vector<std::size_t> permutation;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  /// Empty when every diagonal entry of A vanishes (then the solution is 0).
  std::optional<Problem> reduced;
};

/// Throws NotRegular if a zero diagonal entry of A does not sit on a zero row of K.
ReductionData reduce_zero_diagonal(const Problem& p);

/// Pads the reduced solution with r zero rows and undoes the permutation.
Matrix embed_solution(const ReductionData& red, const Matrix& phi_reduced);

struct FactorizationReport {
  bool ok = false;
  /// ||H W - W diag(R, -S)||_F with W = [I Psi; Phi I].
  double defect = 0.0;
  bool r_regular = false;
  bool s_regular = false;
};

FactorizationReport verify_factorization(const Problem& p, const Matrix& phi, const Matrix& psi,
                                         double tol = 1e-8);

/// Copy of `m` with off-diagonal entries in (0, tol * max|m|] set to zero, so
/// rounding noise on a computed Z-matrix does not defeat exact sign tests.
Matrix clean_z(const Matrix& m, double tol = 1e-12);

}  // namespace mare
