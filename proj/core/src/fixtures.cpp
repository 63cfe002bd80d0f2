#include <cmath>

#include "mare/generators.hpp"

namespace mare {

std::string_view to_string(FixtureId id) noexcept {
  switch (id) {
    case FixtureId::EX1: return "EX1";
    case FixtureId::EX2: return "EX2";
    case FixtureId::EX3: return "EX3";
    case FixtureId::KM: return "KM";
    case FixtureId::SC1: return "SC1";
    case FixtureId::DISC1: return "DISC1";
    case FixtureId::DISC2: return "DISC2";
  }
  return "unknown";
}

std::optional<FixtureId> parse_fixture(std::string_view text) noexcept {
  for (FixtureId id : kAllFixtures)
    if (text == to_string(id)) return id;
  return std::nullopt;
}

Fixture fixture(FixtureId id) {
  Fixture f;
  f.id = id;
  switch (id) {
    case FixtureId::EX1:
      f.k = {{2, -1, -1, 0}, {0, 2, -1, -1}, {0, -1, 2, -1}, {0, -1, -1, 2}};
      f.n = 2;
      f.phi = Matrix{{0, 0.5}, {0, 0.5}};
      f.eigenvalues = {2.0, 1.0, 0.0, -3.0};
      f.case_label = CaseLabel::CaseII;
      break;
    case FixtureId::EX2:
      f.k = {{2, -1, 0, -1}, {-1, 2, 0, -1}, {0, 0, 2, -2}, {-1, -1, 0, 2}};
      f.n = 2;
      f.phi = Matrix{{0.5, 0.5}, {0.5, 0.5}};
      f.other_solutions = {Matrix{{2, 2}, {1, 1}}};
      f.eigenvalues = {3.0, 0.0, -1.0, -2.0};
      f.case_label = CaseLabel::CaseI;
      break;
    case FixtureId::EX3:
      f.k = {{1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, -1}, {0, -1, 0, 1}};
      f.n = 2;
      f.phi = Matrix{{0, 1}, {0, 1}};
      f.eigenvalues = {1.0, 0.0, 0.0, -1.0};
      f.case_label = CaseLabel::CaseIII;
      break;
    case FixtureId::KM:
      f.k = {{0, 0}, {-1, 0}};
      f.n = 1;
      f.expect_not_regular = true;
      break;
    case FixtureId::SC1:
      f.k = {{3, -1}, {-1, 2}};
      f.n = 1;
      f.phi = Matrix{{(5.0 - std::sqrt(21.0)) / 2.0}};
      f.case_label = CaseLabel::NonsingularK;
      break;
    case FixtureId::DISC1:
      f.k = Matrix(2, 2);
      f.n = 1;
      f.phi = Matrix{{0.0}};
      f.perturbed_k = [](double eps) { return Matrix{{eps, -eps}, {-eps, eps}}; };
      f.perturbed_phi = Matrix{{1.0}};
      break;
    case FixtureId::DISC2:
      f.k = {{1, 0, -1, 0}, {0, 0, 0, 0}, {-1, 0, 1, 0}, {0, 0, 0, 0}};
      f.n = 2;
      f.phi = Matrix{{1, 0}, {0, 0}};
      f.case_label = CaseLabel::DegenerateNullSpace;
      f.perturbed_k = [](double eps) {
        return Matrix{{1, 0, -1, 0}, {0, eps, 0, -eps}, {-1, 0, 1, 0}, {0, -eps, 0, eps}};
      };
      f.perturbed_phi = Matrix::identity(2);
      break;
  }
  return f;
}

}  // namespace mare
