#pragma once

// Thin row-major wrappers over the LAPACKE routines the kernels use.
// Private to mare_core; nothing here leaks LAPACK types into public headers.

#include <vector>

#include "mare/matrix.hpp"

namespace mare::lapack {

struct LuFactors {
  Matrix lu;
  std::vector<int> pivots;
  int info = 0;
  double min_abs_pivot = 0.0;
};

LuFactors getrf(Matrix a);
/// Solves A X = B from the factors of A; `transpose` solves A^T X = B.
Matrix getrs(const LuFactors& f, Matrix b, bool transpose = false);
/// Reciprocal 1-norm condition estimate of the factored matrix.
double gecon(const LuFactors& f, double anorm_one);

std::vector<Complex> geev(Matrix a);

struct RealSchur {
  Matrix t;
  Matrix q;
};
RealSchur gees(Matrix a);

/// Moves the diagonal block starting at 1-based `ifst` to `ilst`.
/// Returns LAPACK info (1 = swap rejected as ill-conditioned).
int trexc(Matrix& t, Matrix& q, int& ifst, int& ilst);

/// Solves A X + X B = scale * C for quasi-triangular A, B. Returns X; writes scale.
Matrix trsyl(const Matrix& a, const Matrix& b, Matrix c, double& scale, int& info);

struct Svd {
  Vector s;
  Matrix u;
  Matrix vt;
};
Svd gesvd(Matrix a);

}  // namespace mare::lapack
