#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mare/matrix.hpp"

namespace mare::cli {

/// Ordered key/value report. Machine mode prints flat `key=value` lines with
/// matrices flattened row-major as `key.i.j`; human mode groups entries under
/// section titles and prints matrices as rows.
class Report {
 public:
  void section(std::string title);
  void text(std::string key, std::string value);
  void number(std::string key, double value);
  void count(std::string key, std::size_t value);
  void flag(std::string key, bool value);
  void matrix(std::string key, const Matrix& m);
  void vector(std::string key, const Vector& v);
  void eigenvalues(std::string key, const std::vector<Complex>& values);

  void render(std::ostream& out, bool machine) const;

 private:
  struct Entry {
    enum class Kind { Section, Scalar, Matrix } kind;
    std::string key;
    std::string value;
    Matrix m;
  };
  std::vector<Entry> entries_;
};

}  // namespace mare::cli
