#pragma once

// Reference computations that share no code with the library: long double
// Gaussian elimination, Kronecker-form Sylvester and Newton solves, and the
// closed-form scalar root.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mare/matrix.hpp"
#include "mare/riccati.hpp"

namespace oracle {

using Real = long double;

inline std::vector<Real> gauss_solve(std::vector<std::vector<Real>> a, std::vector<Real> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-300L) throw std::runtime_error("oracle: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

using LMat = std::vector<std::vector<Real>>;

inline LMat widen(const mare::Matrix& m) {
  LMat out(m.rows(), std::vector<Real>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline mare::Matrix narrow(const LMat& m) {
  mare::Matrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = static_cast<double>(m[i][j]);
  return out;
}

inline LMat mul(const LMat& a, const LMat& b) {
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  LMat out(r, std::vector<Real>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

inline LMat sub(LMat a, const LMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

// P X + X Q = C through the (m n) x (m n) Kronecker system, unknown x_ij at i n + j.
inline LMat kron_sylvester(const LMat& p, const LMat& q, const LMat& c) {
  const std::size_t m = p.size(), n = q.size();
  std::vector<std::vector<Real>> a(m * n, std::vector<Real>(m * n, 0));
  std::vector<Real> rhs(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      rhs[row] = c[i][j];
      for (std::size_t k = 0; k < m; ++k) a[row][k * n + j] += p[i][k];
      for (std::size_t l = 0; l < n; ++l) a[row][i * n + l] += q[l][j];
    }
  }
  const auto x = gauss_solve(std::move(a), std::move(rhs));
  LMat out(m, std::vector<Real>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = x[i * n + j];
  return out;
}

inline mare::Matrix kron_sylvester(const mare::Matrix& p, const mare::Matrix& q, const mare::Matrix& c) {
  return narrow(kron_sylvester(widen(p), widen(q), widen(c)));
}

// Newton from X = 0 in long double; valid when K is a nonsingular M-matrix.
inline mare::Matrix newton_minimal(const mare::Problem& prob, int steps = 60) {
  const LMat a = widen(prob.a()), b = widen(prob.b()), c = widen(prob.c()), d = widen(prob.d());
  LMat x(prob.m(), std::vector<Real>(prob.n(), 0));
  for (int k = 0; k < steps; ++k) {
    const LMat xc = mul(x, c);
    const LMat cx = mul(c, x);
    const LMat rhs = sub(b, mul(xc, x));
    LMat next = kron_sylvester(sub(a, xc), sub(d, cx), rhs);
    Real change = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x[i].size(); ++j) change = std::max(change, std::fabs(next[i][j] - x[i][j]));
    x = std::move(next);
    if (change < 1e-30L) break;
  }
  return narrow(x);
}

// Minimal nonnegative root of c x^2 - (a + d) x + b = 0 (n = m = 1).
inline double scalar_minimal_root(double a, double b, double c, double d) {
  const Real s = static_cast<Real>(a) + d;
  const Real disc = s * s - 4.0L * b * c;
  if (c == 0) return static_cast<double>(b / s);
  // 2b / (s + sqrt(disc)) avoids cancellation in (s - sqrt(disc)) / (2c).
  return static_cast<double>(2.0L * b / (s + std::sqrt(disc)));
}

}  // namespace oracle
