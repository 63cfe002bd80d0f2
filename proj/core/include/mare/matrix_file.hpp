#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mare/matrix.hpp"

namespace mare {

/// Text format for K:
///
///   mare 1
///   n m
///   <(n+m)^2 entries of K, row-major, any whitespace>
///
/// Lines whose first non-blank character is '#' are comments.
struct MatrixFile {
  std::size_t n = 0;
  std::size_t m = 0;
  Matrix k;
};

/// Throws ParseError whose message starts with "line <L>: ".
MatrixFile parse_matrix_file(std::istream& in);
MatrixFile read_matrix_file(const std::filesystem::path& path);

/// `comment` lines (split on '\n') are written as '#' lines after the header.
void write_matrix_file(std::ostream& out, const Matrix& k, std::size_t n, std::string_view comment = {});
void write_matrix_file(const std::filesystem::path& path, const Matrix& k, std::size_t n,
                       std::string_view comment = {});

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace mare
