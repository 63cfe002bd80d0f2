#include "mare/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mare/error.hpp"

namespace mare {

Problem::Problem(Matrix a, Matrix b, Matrix c, Matrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const std::size_t m = a_.rows();
  const std::size_t n = d_.rows();
  if (m == 0 || n == 0 || !a_.is_square() || !d_.is_square())
    throw Error(ErrorCode::BadDimensions, "A and D must be nonempty square blocks");
  if (b_.rows() != m || b_.cols() != n || c_.rows() != n || c_.cols() != m)
    throw Error(ErrorCode::BadDimensions, "B must be m x n and C n x m");
  if (!is_z_matrix(k_matrix(*this))) throw Error(ErrorCode::NotZ, "K = [D -C; -B A] is not a Z-matrix");
}

Problem from_k(const Matrix& k, std::size_t n) {
  if (!k.is_square()) throw Error(ErrorCode::BadDimensions, "K must be square");
  if (n == 0 || n >= k.rows())
    throw Error(ErrorCode::BadDimensions,
                "need 1 <= n < size(K), got n=" + std::to_string(n) + " size=" + std::to_string(k.rows()));
  const std::size_t m = k.rows() - n;
  if (!is_z_matrix(k)) throw Error(ErrorCode::NotZ, "K is not a Z-matrix");
  return Problem(k.block(n, n, m, m), -k.block(n, 0, m, n), -k.block(0, n, n, m), k.block(0, 0, n, n));
}

Matrix k_matrix(const Problem& p) {
  return vstack(hstack(p.d(), -p.c()), hstack(-p.b(), p.a()));
}

Matrix h_matrix(const Problem& p) {
  return vstack(hstack(p.d(), -p.c()), hstack(p.b(), -p.a()));
}

Matrix residual(const Problem& p, const Matrix& x) {
  if (x.rows() != p.m() || x.cols() != p.n())
    throw Error(ErrorCode::ShapeMismatch, "X must be m x n");
  Matrix r = x * p.c() * x;
  r -= x * p.d();
  r -= p.a() * x;
  r += p.b();
  return r;
}

double relative_residual(const Problem& p, const Matrix& x) {
  const double xf = x.norm_fro();
  const double denom = p.b().norm_fro() + xf * (p.c().norm_fro() * xf + p.d().norm_fro() + p.a().norm_fro());
  const double num = residual(p, x).norm_fro();
  return denom > 0.0 ? num / denom : num;
}

Problem dual(const Problem& p) { return Problem(p.d(), p.c(), p.b(), p.a()); }

ReductionData reduce_zero_diagonal(const Problem& p) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const Matrix& a = p.a();
  const double cut = 1e-13 * (1.0 + a.norm_inf());

  ReductionData red;
  red.m = m;
  red.n = n;
  std::vector<std::size_t> kept, zero;
  for (std::size_t i = 0; i < m; ++i) {
    if (a(i, i) > cut) {
      kept.push_back(i);
      continue;
    }
    for (std::size_t j = 0; j < m; ++j)
      if (a(i, j) != 0.0)
        throw Error(ErrorCode::NotRegular, "A has a zero diagonal at row " + std::to_string(i) +
                                               " but that row of K is not zero; K is not regular");
    for (std::size_t j = 0; j < n; ++j)
      if (p.b()(i, j) != 0.0)
        throw Error(ErrorCode::NotRegular, "A has a zero diagonal at row " + std::to_string(i) +
                                               " but that row of K is not zero; K is not regular");
    zero.push_back(i);
  }
  red.r = zero.size();
  red.permutation = kept;
  red.permutation.insert(red.permutation.end(), zero.begin(), zero.end());
  if (kept.empty()) return red;

  const std::size_t mk = kept.size();
  Matrix at(mk, mk), bt(mk, n), ct(n, mk);
  for (std::size_t i = 0; i < mk; ++i) {
    for (std::size_t j = 0; j < mk; ++j) at(i, j) = a(kept[i], kept[j]);
    for (std::size_t j = 0; j < n; ++j) bt(i, j) = p.b()(kept[i], j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < mk; ++j) ct(i, j) = p.c()(i, kept[j]);
  red.reduced.emplace(std::move(at), std::move(bt), std::move(ct), p.d());
  return red;
}

Matrix embed_solution(const ReductionData& red, const Matrix& phi_reduced) {
  const std::size_t mk = red.m - red.r;
  if (phi_reduced.rows() != mk || (mk > 0 && phi_reduced.cols() != red.n))
    throw Error(ErrorCode::ShapeMismatch, "reduced solution must be (m - r) x n");
  Matrix phi(red.m, red.n);
  for (std::size_t i = 0; i < mk; ++i)
    for (std::size_t j = 0; j < red.n; ++j) phi(red.permutation[i], j) = phi_reduced(i, j);
  return phi;
}

Matrix clean_z(const Matrix& m, double tol) {
  Matrix out = m;
  const double cut = tol * std::max(1.0, m.norm_max());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && out(i, j) > 0.0 && out(i, j) <= cut) out(i, j) = 0.0;
  return out;
}

FactorizationReport verify_factorization(const Problem& p, const Matrix& phi, const Matrix& psi, double tol) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  if (phi.rows() != m || phi.cols() != n || psi.rows() != n || psi.cols() != m)
    throw Error(ErrorCode::ShapeMismatch, "Phi must be m x n and Psi n x m");

  const Matrix r = p.d() - p.c() * phi;
  const Matrix s = p.a() - p.b() * psi;
  const Matrix w = vstack(hstack(Matrix::identity(n), psi), hstack(phi, Matrix::identity(m)));
  Matrix blocks(n + m, n + m);
  blocks.set_block(0, 0, r);
  blocks.set_block(n, n, -s);
  const Matrix h = h_matrix(p);

  FactorizationReport rep;
  rep.defect = (h * w - w * blocks).norm_fro();
  const double cat_tol = std::max(kCategorizeTol, tol);
  const MatrixKind kr = categorize(clean_z(r, tol), cat_tol);
  const MatrixKind ks = categorize(clean_z(s, tol), cat_tol);
  rep.r_regular = kr.is_m && kr.regular;
  rep.s_regular = ks.is_m && ks.regular;
  const double scale = std::max(1.0, h.norm_fro() * w.norm_fro());
  rep.ok = rep.defect <= tol * scale && rep.r_regular && rep.s_regular;
  return rep;
}

}  // namespace mare
