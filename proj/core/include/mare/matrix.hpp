#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mare {

using Complex = std::complex<double>;
using Vector = std::vector<double>;

/// Dense real matrix stored row-major. Entries are finite at construction.
///
/// Sized for desk-scale work (dimensions up to a few hundred); every
/// operation is a plain value-semantics computation with no shared state.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Takes ownership of row-major `entries`; throws on size mismatch or NaN/Inf.
  static Matrix from_row_major(std::size_t rows, std::size_t cols, std::vector<double> entries);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  Vector column(std::size_t j) const;
  Vector diag() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& src);

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s) noexcept;

  double norm_fro() const noexcept;
  /// Maximum absolute row sum.
  double norm_inf() const noexcept;
  /// Largest absolute entry.
  double norm_max() const noexcept;
  double trace() const noexcept;
  double min_entry() const noexcept;

  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Vector operator*(const Matrix& m, std::span<const double> x);

/// [top; bottom]
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// [left right]
Matrix hstack(const Matrix& left, const Matrix& right);

/// Largest |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> x) noexcept;
double norm2(std::span<const double> x) noexcept;
/// x^T M
Vector left_multiply(std::span<const double> x, const Matrix& m);

}  // namespace mare
