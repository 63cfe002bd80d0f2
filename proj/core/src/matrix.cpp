#include "mare/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mare/error.hpp"

namespace mare {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) throw Error(ErrorCode::NonFinite, "matrix fill value");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::BadDimensions, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix literal has NaN/Inf");
}

Matrix Matrix::from_row_major(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols) {
    throw Error(ErrorCode::BadDimensions, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(entries.size()));
  }
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries have NaN/Inf");
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Vector Matrix::diag() const {
  const std::size_t k = std::min(rows_, cols_);
  Vector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::BadDimensions, "block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                b.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) {
    throw Error(ErrorCode::BadDimensions, "set_block out of range");
  }
  for (std::size_t i = 0; i < src.rows_; ++i) {
    std::copy_n(src.data_.begin() + static_cast<std::ptrdiff_t>(i * src.cols_), src.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& x : data_) x *= s;
  return *this;
}

double Matrix::norm_fro() const noexcept {
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : data_) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double Matrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (double x : row(i)) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

double Matrix::norm_max() const noexcept {
  double best = 0.0;
  for (double x : data_) best = std::max(best, std::abs(x));
  return best;
}

double Matrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::min_entry() const noexcept {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator-(Matrix m) { return m *= -1.0; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "matmul: " + std::to_string(lhs.rows()) + "x" +
                                              std::to_string(lhs.cols()) + " * " +
                                              std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vector operator*(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matvec");
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) y[i] = dot(m.row(i), x);
  return y;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorCode::ShapeMismatch, "vstack");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw Error(ErrorCode::ShapeMismatch, "hstack");
  Matrix out(left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm1(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm2(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Vector left_multiply(std::span<const double> x, const Matrix& m) {
  if (m.rows() != x.size()) throw Error(ErrorCode::ShapeMismatch, "left_multiply");
  Vector y(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  return y;
}

}  // namespace mare
