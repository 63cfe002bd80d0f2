#include "mare/matrix_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "mare/error.hpp"

namespace mare {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool is_comment_or_blank(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected a count, got '" + std::string(tok) + "'");
  return v;
}

double parse_entry(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
    fail(line, "expected a finite number, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

MatrixFile parse_matrix_file(std::istream& in) {
  MatrixFile f;
  std::string text;
  std::size_t line = 0;
  enum class Stage { Header, Dims, Body } stage = Stage::Header;
  std::vector<double> entries;
  std::size_t expected = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_comment_or_blank(text)) continue;
    const auto toks = split(text);
    switch (stage) {
      case Stage::Header:
        if (toks.size() != 2 || toks[0] != "mare" || toks[1] != "1") fail(line, "expected header 'mare 1'");
        stage = Stage::Dims;
        break;
      case Stage::Dims:
        if (toks.size() != 2) fail(line, "expected dimensions 'n m'");
        f.n = parse_count(toks[0], line);
        f.m = parse_count(toks[1], line);
        if (f.n == 0 || f.m == 0) fail(line, "n and m must be at least 1");
        expected = (f.n + f.m) * (f.n + f.m);
        entries.reserve(expected);
        stage = Stage::Body;
        break;
      case Stage::Body:
        for (auto tok : toks) {
          if (entries.size() == expected)
            fail(line, "too many entries (expected " + std::to_string(expected) + ")");
          entries.push_back(parse_entry(tok, line));
        }
        break;
    }
  }
  if (stage == Stage::Header) fail(line + 1, "missing header 'mare 1'");
  if (stage == Stage::Dims) fail(line + 1, "missing dimensions line");
  if (entries.size() != expected)
    fail(line + 1, "expected " + std::to_string(expected) + " entries, found " + std::to_string(entries.size()));
  f.k = Matrix::from_row_major(f.n + f.m, f.n + f.m, std::move(entries));
  return f;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "line 0: cannot open " + path.string());
  return parse_matrix_file(in);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_matrix_file(std::ostream& out, const Matrix& k, std::size_t n, std::string_view comment) {
  if (!k.is_square() || n == 0 || n >= k.rows())
    throw Error(ErrorCode::BadDimensions, "write_matrix_file: need square K and 1 <= n < size");
  out << "mare 1\n";
  std::size_t pos = 0;
  while (pos < comment.size()) {
    const auto end = comment.find('\n', pos);
    const auto piece = comment.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    out << "# " << piece << '\n';
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  out << n << ' ' << k.rows() - n << '\n';
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) out << (j ? " " : "") << format_double(k(i, j));
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& k, std::size_t n, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  write_matrix_file(out, k, n, comment);
}

}  // namespace mare
