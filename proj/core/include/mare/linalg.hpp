#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mare/matrix.hpp"

namespace mare {

/// Default relative threshold below which a pivot or eigenvalue counts as zero.
inline constexpr double kSingularityTol = 1e-12;
/// Default relative threshold on singular values when counting null-space dimension.
inline constexpr double kNullRankTol = 1e-10;

/// Solves M X = RHS with partial pivoting. Throws SingularMatrix when a pivot
/// falls below `singular_tol * max|M_ij|`.
Matrix linear_solve(const Matrix& m, const Matrix& rhs, double singular_tol = kSingularityTol);
Vector linear_solve(const Matrix& m, std::span<const double> rhs, double singular_tol = kSingularityTol);

/// Estimated 1-norm condition number; infinity when exactly singular.
double condition_estimate(const Matrix& m);

std::vector<Complex> eigenvalues(const Matrix& m);

/// Total order used everywhere eigenvalues are ranked: real part descending,
/// ties broken by imaginary part descending.
bool eigen_precedes(Complex a, Complex b) noexcept;
void sort_eigenvalues(std::vector<Complex>& values);

struct SchurBlock {
  std::size_t start = 0;
  std::size_t size = 1;  // 1 or 2
  Complex eigenvalue;    // for 2x2 blocks the member with positive imaginary part
};

/// M = Q T Q^T with Q orthogonal and T quasi-upper-triangular.
struct SchurForm {
  Matrix q;
  Matrix t;

  std::vector<SchurBlock> blocks() const;
  /// Eigenvalues in diagonal order; conjugate pairs listed (+im, -im).
  std::vector<Complex> eigenvalues() const;
  /// True when the leading k columns end on a block boundary.
  bool splits_cleanly_at(std::size_t k) const;
};

SchurForm real_schur(const Matrix& m);

/// Real Schur form with diagonal blocks ordered by `eigen_precedes`, so the
/// leading k Schur vectors span the invariant subspace of the k eigenvalues
/// with largest real parts whenever k is a block boundary.
SchurForm ordered_real_schur(const Matrix& m);

/// Moves the listed blocks (indices into `form.blocks()`) to the top of T,
/// keeping their relative order. Throws ReorderFailure if a swap is rejected.
SchurForm reorder_schur(SchurForm form, std::span<const std::size_t> selected_blocks);

/// Solves P X + X Q = C (Bartels-Stewart on real Schur forms). Throws
/// NearSingularOperator when min |lambda_i(P) + lambda_j(Q)| is below
/// `singular_tol * max(max|P|, max|Q|)`.
Matrix solve_sylvester(const Matrix& p, const Matrix& q, const Matrix& c,
                       double singular_tol = kSingularityTol);

/// Smallest |lambda_i(P) + lambda_j(Q)|, i.e. the spectral distance of the Sylvester operator from singularity.
double sylvester_separation(const Matrix& p, const Matrix& q);

/// max |lambda|. With `nonnegative`, the result is cross-checked against
/// Collatz-Wielandt bounds from a power iteration on M + I.
double spectral_radius(const Matrix& m, bool nonnegative = false);

/// Number of singular values at or below `rank_tol * max(1, sigma_max)`.
std::size_t null_rank(const Matrix& m, double rank_tol = kNullRankTol);

enum class Side { Left, Right };

/// Nonnegative unit-1-norm w with M w = 0 (Right) or w^T M = 0 (Left).
/// Requires a one-dimensional null space (NullSpaceDimension otherwise) and a
/// sign-definite representative (SignFailure otherwise).
Vector nonneg_null_vector(const Matrix& m, Side side, double rank_tol = kNullRankTol);

}  // namespace mare
