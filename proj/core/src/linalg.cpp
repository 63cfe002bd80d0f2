#include "mare/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lapack.hpp"
#include "mare/error.hpp"

namespace mare {

namespace {

double one_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double orthogonality_defect(const Matrix& q) {
  Matrix g = q.transpose() * q;
  g -= Matrix::identity(q.rows());
  return g.norm_fro();
}

Complex block_eigenvalue(const Matrix& t, std::size_t start, std::size_t size) {
  if (size == 1) return {t(start, start), 0.0};
  const double a = t(start, start);
  const double b = t(start, start + 1);
  const double c = t(start + 1, start);
  const double d = t(start + 1, start + 1);
  const double half_tr = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  return {half_tr, std::sqrt(std::max(0.0, -disc))};
}

}  // namespace

Matrix linear_solve(const Matrix& m, const Matrix& rhs, double singular_tol) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "linear_solve: matrix not square");
  if (rhs.rows() != m.rows()) throw Error(ErrorCode::ShapeMismatch, "linear_solve: rhs rows");
  if (m.rows() == 0) return rhs;
  const double scale = m.norm_max();
  auto f = lapack::getrf(m);
  if (f.info > 0 || scale == 0.0 || f.min_abs_pivot <= singular_tol * scale) {
    throw Error(ErrorCode::SingularMatrix,
                "pivot " + std::to_string(f.min_abs_pivot) + " below threshold (max entry " +
                    std::to_string(scale) + ")");
  }
  return lapack::getrs(f, rhs);
}

Vector linear_solve(const Matrix& m, std::span<const double> rhs, double singular_tol) {
  Matrix b = Matrix::from_row_major(rhs.size(), 1, Vector(rhs.begin(), rhs.end()));
  return linear_solve(m, b, singular_tol).column(0);
}

double condition_estimate(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "condition_estimate: matrix not square");
  if (m.rows() == 0) return 1.0;
  const double anorm = one_norm(m);
  auto f = lapack::getrf(m);
  const double rcond = lapack::gecon(f, anorm);
  return rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

std::vector<Complex> eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "eigenvalues: matrix not square");
  return lapack::geev(m);
}

bool eigen_precedes(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void sort_eigenvalues(std::vector<Complex>& values) {
  std::stable_sort(values.begin(), values.end(), eigen_precedes);
}

std::vector<SchurBlock> SchurForm::blocks() const {
  std::vector<SchurBlock> out;
  const std::size_t n = t.rows();
  std::size_t i = 0;
  while (i < n) {
    const std::size_t size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    out.push_back({i, size, block_eigenvalue(t, i, size)});
    i += size;
  }
  return out;
}

std::vector<Complex> SchurForm::eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& b : blocks()) {
    out.push_back(b.eigenvalue);
    if (b.size == 2) out.push_back(std::conj(b.eigenvalue));
  }
  return out;
}

bool SchurForm::splits_cleanly_at(std::size_t k) const {
  if (k == 0 || k >= t.rows()) return true;
  return t(k, k - 1) == 0.0;
}

SchurForm real_schur(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "real_schur: matrix not square");
  auto s = lapack::gees(m);
  return SchurForm{std::move(s.q), std::move(s.t)};
}

namespace {

void move_block(SchurForm& form, std::size_t from, std::size_t to) {
  if (from == to) return;
  int ifst = static_cast<int>(from) + 1;
  int ilst = static_cast<int>(to) + 1;
  const int info = lapack::trexc(form.t, form.q, ifst, ilst);
  if (info != 0) {
    throw Error(ErrorCode::ReorderFailure,
                "adjacent block swap rejected as numerically unstable (moving block at " +
                    std::to_string(from) + " to " + std::to_string(to) + ")");
  }
}

void check_orthogonality(const SchurForm& form) {
  const double defect = orthogonality_defect(form.q);
  if (defect > 1e-8) {
    throw Error(ErrorCode::ReorderFailure, "Schur vectors lost orthogonality: ||Q^T Q - I||_F = " +
                                               std::to_string(defect));
  }
}

}  // namespace

SchurForm ordered_real_schur(const Matrix& m) {
  SchurForm form = real_schur(m);
  const std::size_t n = form.t.rows();
  std::size_t pos = 0;
  while (pos < n) {
    const auto blocks = form.blocks();
    const SchurBlock* best = nullptr;
    for (const auto& b : blocks) {
      if (b.start < pos) continue;
      if (best == nullptr || eigen_precedes(b.eigenvalue, best->eigenvalue)) best = &b;
    }
    move_block(form, best->start, pos);
    pos += (pos + 1 < n && form.t(pos + 1, pos) != 0.0) ? 2 : 1;
  }
  check_orthogonality(form);
  return form;
}

SchurForm reorder_schur(SchurForm form, std::span<const std::size_t> selected_blocks) {
  const auto blocks = form.blocks();
  std::vector<std::size_t> chosen(selected_blocks.begin(), selected_blocks.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  // Moving a block upward never shifts blocks below its old position, so each
  // chosen block still sits at its original start when its turn comes.
  std::size_t pos = 0;
  for (std::size_t idx : chosen) {
    if (idx >= blocks.size()) throw Error(ErrorCode::InvalidArgument, "block index out of range");
    move_block(form, blocks[idx].start, pos);
    pos += blocks[idx].size;
  }
  check_orthogonality(form);
  return form;
}

double sylvester_separation(const Matrix& p, const Matrix& q) {
  const auto lp = eigenvalues(p);
  const auto lq = eigenvalues(q);
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& a : lp)
    for (const auto& b : lq) sep = std::min(sep, std::abs(a + b));
  return sep;
}

Matrix solve_sylvester(const Matrix& p, const Matrix& q, const Matrix& c, double singular_tol) {
  if (!p.is_square() || !q.is_square()) throw Error(ErrorCode::BadDimensions, "solve_sylvester: P, Q square");
  if (c.rows() != p.rows() || c.cols() != q.rows()) throw Error(ErrorCode::ShapeMismatch, "solve_sylvester: C");
  if (c.empty()) return c;

  const SchurForm sp = real_schur(p);
  const SchurForm sq = real_schur(q);
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& a : sp.eigenvalues())
    for (const auto& b : sq.eigenvalues()) sep = std::min(sep, std::abs(a + b));
  const double scale = std::max(p.norm_max(), q.norm_max());
  if (sep <= singular_tol * scale) {
    throw Error(ErrorCode::NearSingularOperator,
                "min |lambda(P) + lambda(Q)| = " + std::to_string(sep) + " (critical case suspected)");
  }

  Matrix f = sp.q.transpose() * c * sq.q;
  double trsyl_scale = 1.0;
  int info = 0;
  Matrix y = lapack::trsyl(sp.t, sq.t, std::move(f), trsyl_scale, info);
  if (trsyl_scale != 1.0) y *= 1.0 / trsyl_scale;
  return sp.q * y * sq.q.transpose();
}

double spectral_radius(const Matrix& m, bool nonnegative) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "spectral_radius: matrix not square");
  if (m.rows() == 0) return 0.0;
  double rho = 0.0;
  for (const auto& l : eigenvalues(m)) rho = std::max(rho, std::abs(l));
  if (!nonnegative) return rho;

  // For N >= 0 and any x > 0: min_i (Nx)_i/x_i <= rho(N) <= max_i (Nx)_i/x_i.
  // Iterating x <- (N + I) x keeps x strictly positive and tightens both bounds.
  const std::size_t n = m.rows();
  Vector x(n, 1.0 / static_cast<double>(n));
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    Vector y = m * x;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, y[i] / x[i]);
      hi = std::max(hi, y[i] / x[i]);
    }
    lower = std::max(lower, lo);
    upper = std::min(upper, hi);
    if (upper - lower <= 1e-14 * std::max(1.0, upper)) break;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += y[i];
      s += x[i];
    }
    for (double& v : x) v /= s;
    if (std::any_of(x.begin(), x.end(), [](double v) { return !(v > 0.0); })) break;
  }
  const double slack = 1e-6 * std::max(1.0, m.norm_max());
  if (rho < lower - slack || rho > upper + slack) {
    throw Error(ErrorCode::NoConvergence, "spectral radius " + std::to_string(rho) +
                                              " outside Collatz-Wielandt bounds [" + std::to_string(lower) +
                                              ", " + std::to_string(upper) + "]");
  }
  return rho;
}

std::size_t null_rank(const Matrix& m, double rank_tol) {
  if (m.empty()) return 0;
  const auto svd = lapack::gesvd(m);
  const double smax = svd.s.empty() ? 0.0 : svd.s.front();
  const double cut = rank_tol * std::max(1.0, smax);
  std::size_t rank = 0;
  for (double s : svd.s)
    if (s > cut) ++rank;
  return m.cols() - rank;
}

Vector nonneg_null_vector(const Matrix& m, Side side, double rank_tol) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "nonneg_null_vector: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) throw Error(ErrorCode::NullSpaceDimension, "empty matrix");
  const Matrix& a = side == Side::Right ? m : m.transpose();
  const auto svd = lapack::gesvd(a);
  const double cut = rank_tol * std::max(1.0, svd.s.front());
  std::size_t rank = 0;
  for (double s : svd.s)
    if (s > cut) ++rank;
  if (n - rank != 1) {
    throw Error(ErrorCode::NullSpaceDimension,
                "numerical null space has dimension " + std::to_string(n - rank) + ", expected 1");
  }
  Vector w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = svd.vt(n - 1, j);
  const auto extreme = std::max_element(w.begin(), w.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  if (*extreme < 0.0)
    for (double& v : w) v = -v;
  const double clamp = 1e-12 * std::abs(*extreme);
  for (double& v : w) {
    if (v < -clamp) throw Error(ErrorCode::SignFailure, "null vector has entries of both signs");
    if (v < 0.0) v = 0.0;
  }
  const double s = norm1(w);
  for (double& v : w) v /= s;
  return w;
}

}  // namespace mare
