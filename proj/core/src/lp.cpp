#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mare/error.hpp"

namespace mare::lp {

std::optional<Vector> find_feasible_point(const Matrix& a, std::span<const double> b) {
  const std::size_t rows = a.rows();
  const std::size_t nx = a.cols();
  if (b.size() != rows) throw Error(ErrorCode::ShapeMismatch, "find_feasible_point: rhs");
  if (rows == 0) return Vector(nx, 0.0);

  // Columns: x (nx) | surplus/slack s (rows) | artificial (one per row with b_i > 0) | rhs.
  std::vector<std::size_t> artificial_row;
  for (std::size_t i = 0; i < rows; ++i)
    if (b[i] > 0.0) artificial_row.push_back(i);
  const std::size_t na = artificial_row.size();
  const std::size_t ncols = nx + rows + na;
  const std::size_t rhs = ncols;

  Matrix tab(rows, ncols + 1);
  std::vector<std::size_t> basis(rows);
  std::size_t next_art = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (b[i] > 0.0) {
      for (std::size_t j = 0; j < nx; ++j) tab(i, j) = a(i, j);
      tab(i, nx + i) = -1.0;
      tab(i, nx + rows + next_art) = 1.0;
      tab(i, rhs) = b[i];
      basis[i] = nx + rows + next_art;
      ++next_art;
    } else {
      for (std::size_t j = 0; j < nx; ++j) tab(i, j) = -a(i, j);
      tab(i, nx + i) = 1.0;
      tab(i, rhs) = -b[i];
      basis[i] = nx + i;
    }
  }
  if (na == 0) return Vector(nx, 0.0);

  double scale = 1.0;
  for (double v : tab.data()) scale = std::max(scale, std::abs(v));
  const double eps = 1e-12 * scale;

  // Phase-one objective: minimize the sum of artificials. Reduced costs are
  // c_j - c_B B^{-1} A_j with c = 1 on artificials.
  Vector cost(ncols + 1, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < nx + rows) continue;
    for (std::size_t j = 0; j <= ncols; ++j) cost[j] -= tab(i, j);
  }
  for (std::size_t k = 0; k < na; ++k) cost[nx + rows + k] += 1.0;

  const std::size_t max_pivots = 50 * (ncols + rows) + 100;
  for (std::size_t it = 0; it < max_pivots; ++it) {
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == ncols) break;

    std::size_t leave = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double piv = tab(i, enter);
      if (piv <= eps) continue;
      const double ratio = tab(i, rhs) / piv;
      if (ratio < best_ratio - eps ||
          (std::abs(ratio - best_ratio) <= eps && leave < rows && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    // Phase one is bounded below by zero, so an unbounded direction cannot
    // lower the objective; stop.
    if (leave == rows) break;

    const double piv = tab(leave, enter);
    for (std::size_t j = 0; j <= ncols; ++j) tab(leave, j) /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) tab(i, j) -= f * tab(leave, j);
    }
    const double fc = cost[enter];
    for (std::size_t j = 0; j <= ncols; ++j) cost[j] -= fc * tab(leave, j);
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= nx + rows) infeasibility += std::max(0.0, tab(i, rhs));
  double bscale = 1.0;
  for (double v : b) bscale = std::max(bscale, std::abs(v));
  if (infeasibility > 1e-9 * bscale) return std::nullopt;

  Vector x(nx, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < nx) x[basis[i]] = std::max(0.0, tab(i, rhs));
  return x;
}

}  // namespace mare::lp
