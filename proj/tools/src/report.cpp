#include "report.hpp"

#include <algorithm>
#include <cstdio>

#include "mare/matrix_file.hpp"

namespace mare::cli {

void Report::section(std::string title) { entries_.push_back({Entry::Kind::Section, std::move(title), {}, {}}); }

void Report::text(std::string key, std::string value) {
  entries_.push_back({Entry::Kind::Scalar, std::move(key), std::move(value), {}});
}

void Report::number(std::string key, double value) { text(std::move(key), format_double(value)); }

void Report::count(std::string key, std::size_t value) { text(std::move(key), std::to_string(value)); }

void Report::flag(std::string key, bool value) { text(std::move(key), value ? "true" : "false"); }

void Report::matrix(std::string key, const Matrix& m) {
  entries_.push_back({Entry::Kind::Matrix, std::move(key), {}, m});
}

void Report::vector(std::string key, const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) number(key + "." + std::to_string(i), v[i]);
}

void Report::eigenvalues(std::string key, const std::vector<Complex>& values) {
  count(key + ".count", values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    number(key + "." + std::to_string(i) + ".re", values[i].real());
    number(key + "." + std::to_string(i) + ".im", values[i].imag());
  }
}

void Report::render(std::ostream& out, bool machine) const {
  if (machine) {
    for (const auto& e : entries_) {
      switch (e.kind) {
        case Entry::Kind::Section:
          break;
        case Entry::Kind::Scalar:
          out << e.key << '=' << e.value << '\n';
          break;
        case Entry::Kind::Matrix:
          for (std::size_t i = 0; i < e.m.rows(); ++i)
            for (std::size_t j = 0; j < e.m.cols(); ++j)
              out << e.key << '.' << i << '.' << j << '=' << format_double(e.m(i, j)) << '\n';
          break;
      }
    }
    return;
  }

  std::size_t width = 0;
  for (const auto& e : entries_)
    if (e.kind == Entry::Kind::Scalar) width = std::max(width, e.key.size());
  bool first = true;
  for (const auto& e : entries_) {
    switch (e.kind) {
      case Entry::Kind::Section:
        if (!first) out << '\n';
        out << "== " << e.key << '\n';
        break;
      case Entry::Kind::Scalar:
        out << "  " << e.key << std::string(width - e.key.size(), ' ') << "  " << e.value << '\n';
        break;
      case Entry::Kind::Matrix: {
        out << "  " << e.key << " =\n";
        char buf[32];
        for (std::size_t i = 0; i < e.m.rows(); ++i) {
          out << "    ";
          for (std::size_t j = 0; j < e.m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%22.15g", e.m(i, j));
            out << buf;
          }
          out << '\n';
        }
        break;
      }
    }
    first = false;
  }
}

}  // namespace mare::cli
