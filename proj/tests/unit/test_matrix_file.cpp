#include <gtest/gtest.h>

#include <sstream>

#include "mare/error.hpp"
#include "mare/generators.hpp"
#include "mare/matrix_file.hpp"

using namespace mare;

namespace {

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_matrix_file(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "parsed: " << text;
  return {};
}

}  // namespace

TEST(MatrixFile, ParsesWithComments) {
  std::istringstream in("# leading comment\nmare 1\n  # indented comment\n1 1\n3 -1\n# between rows\n-1 2\n");
  const MatrixFile f = parse_matrix_file(in);
  EXPECT_EQ(f.n, 1u);
  EXPECT_EQ(f.m, 1u);
  EXPECT_EQ(f.k, (Matrix{{3, -1}, {-1, 2}}));
}

TEST(MatrixFile, EntriesMaySpanLinesFreely) {
  std::istringstream in("mare 1\n1 1\n3 -1 -1\n2\n");
  EXPECT_EQ(parse_matrix_file(in).k, (Matrix{{3, -1}, {-1, 2}}));
}

TEST(MatrixFile, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error("mare 2\n1 1\n1 0 0 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n1\n1 0 0 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n1 1\n1 0\n0 x\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n1 1\n1 0\n0\n").find("line"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n1 1\n1 0\n0 1 5\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n0 1\n1\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("mare 1\n1 1\n1 0\n0 nan\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("").find("line"), std::string::npos);
}

TEST(MatrixFile, RoundTripIsExact) {
  GenSpec spec;
  spec.n = 3;
  spec.m = 2;
  spec.seed = 8;
  spec.zero_row_sums = false;
  spec.category = Category::IrreducibleSingular;
  const Matrix k = random_generator_k(spec);
  std::stringstream io;
  write_matrix_file(io, k, 3, "two\ncomment lines");
  const MatrixFile back = parse_matrix_file(io);
  EXPECT_EQ(back.n, 3u);
  EXPECT_EQ(back.m, 2u);
  EXPECT_EQ(back.k, k);
}

TEST(MatrixFile, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  const double x = 0.20871215252208003;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(MatrixFile, ShippedFixturesMatchGenerators) {
  const std::pair<const char*, FixtureId> files[] = {
      {"ex1.mare", FixtureId::EX1}, {"ex2.mare", FixtureId::EX2}, {"ex3.mare", FixtureId::EX3},
      {"km.mare", FixtureId::KM},   {"sc1.mare", FixtureId::SC1}, {"disc1.mare", FixtureId::DISC1},
      {"disc2.mare", FixtureId::DISC2}};
  for (const auto& [name, id] : files) {
    const MatrixFile f = read_matrix_file(std::string(MARE_DATA_DIR) + "/" + name);
    const Fixture fx = fixture(id);
    EXPECT_EQ(f.k, fx.k) << name;
    EXPECT_EQ(f.n, fx.n) << name;
  }
}

TEST(MatrixFile, MissingFileIsParseError) {
  try {
    read_matrix_file("/nonexistent/file.mare");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}
