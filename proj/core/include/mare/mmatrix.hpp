#pragma once

#include <cstddef>
#include <optional>

#include "mare/matrix.hpp"

namespace mare {

/// Default tolerance for the singular / nonsingular M-matrix dichotomy.
inline constexpr double kCategorizeTol = 1e-10;

/// Where a square real matrix sits in the Z-matrix / M-matrix taxonomy.
///
/// A Z-matrix M = sI - N (N >= 0, s = max diagonal entry) is an M-matrix when
/// s >= rho(N), singular when s == rho(N). It is regular when M v >= 0 for
/// some v > 0; `certificate` holds such a v (normalized so min v = 1).
struct MatrixKind {
  bool is_z = false;
  bool is_m = false;
  bool singular = false;
  bool irreducible = false;
  bool regular = false;
  std::optional<Vector> certificate;
  std::size_t null_rank = 0;
  /// s - rho(N), the distance of M from the singular M-matrices along the identity.
  double spectral_gap = 0.0;
};

bool is_z_matrix(const Matrix& m);

/// Strong connectivity of the digraph with an edge i -> j for every nonzero
/// off-diagonal m(i, j). A 1x1 matrix is irreducible.
bool is_irreducible(const Matrix& m);

/// Returns v >= 1 with M v >= 0 (componentwise, up to rounding) when one
/// exists. `m` must be a Z-matrix.
std::optional<Vector> regularity_certificate(const Matrix& m);

MatrixKind categorize(const Matrix& m, double tol = kCategorizeTol);

}  // namespace mare
