#include "mare/mmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lp.hpp"
#include "mare/error.hpp"
#include "mare/linalg.hpp"

namespace mare {

namespace {

std::vector<bool> reachable(const Matrix& m, std::size_t root, bool forward) {
  const std::size_t n = m.rows();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || seen[j]) continue;
      const double w = forward ? m(i, j) : m(j, i);
      if (w != 0.0) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_z_matrix(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "is_z_matrix: matrix not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) > 0.0) return false;
  return true;
}

bool is_irreducible(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "is_irreducible: matrix not square");
  if (m.rows() <= 1) return true;
  const auto fwd = reachable(m, 0, true);
  const auto bwd = reachable(m, 0, false);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

std::optional<Vector> regularity_certificate(const Matrix& m) {
  if (!is_z_matrix(m)) throw Error(ErrorCode::NotZ, "regularity_certificate needs a Z-matrix");
  const std::size_t n = m.rows();
  // v = e + w with w >= 0:  M w >= -M e.
  const Vector ones(n, 1.0);
  Vector b = m * ones;
  for (double& x : b) x = -x;
  auto w = lp::find_feasible_point(m, b);
  if (!w) return std::nullopt;
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + (*w)[i];

  const Vector mv = m * v;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, x);
  const double slack = 1e-10 * std::max(1.0, m.norm_inf()) * vmax;
  for (double x : mv)
    if (x < -slack) return std::nullopt;
  return v;
}

MatrixKind categorize(const Matrix& m, double tol) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "categorize: matrix not square");
  MatrixKind kind;
  kind.irreducible = is_irreducible(m);
  kind.is_z = is_z_matrix(m);
  if (!kind.is_z || m.rows() == 0) return kind;

  const std::size_t n = m.rows();
  double s = m(0, 0);
  for (std::size_t i = 1; i < n; ++i) s = std::max(s, m(i, i));
  Matrix nonneg(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) nonneg(i, j) = (i == j ? s : 0.0) - m(i, j);
  const double rho = spectral_radius(nonneg, true);
  const double band = tol * std::max(s, 1.0);
  kind.spectral_gap = s - rho;
  kind.is_m = kind.spectral_gap >= -band;
  if (!kind.is_m) return kind;
  kind.singular = kind.spectral_gap <= band;
  kind.null_rank = kind.singular ? null_rank(m) : 0;
  kind.certificate = regularity_certificate(m);
  kind.regular = kind.certificate.has_value();
  return kind;
}

}  // namespace mare
