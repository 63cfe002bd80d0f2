#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "mare/case_label.hpp"
#include "mare/matrix.hpp"
#include "mare/riccati.hpp"

namespace mare {

enum class FixtureId { EX1, EX2, EX3, KM, SC1, DISC1, DISC2 };

std::string_view to_string(FixtureId id) noexcept;
std::optional<FixtureId> parse_fixture(std::string_view text) noexcept;
inline constexpr FixtureId kAllFixtures[] = {FixtureId::EX1, FixtureId::EX2,   FixtureId::EX3,  FixtureId::KM,
                                             FixtureId::SC1, FixtureId::DISC1, FixtureId::DISC2};

struct Fixture {
  FixtureId id = FixtureId::EX1;
  Matrix k;
  std::size_t n = 0;
  /// Minimal nonnegative solution, when known in closed form.
  std::optional<Matrix> phi;
  /// Other documented solutions of the same equation.
  std::vector<Matrix> other_solutions;
  /// Eigenvalues of H in descending order; empty when not documented.
  std::vector<Complex> eigenvalues;
  std::optional<CaseLabel> case_label;
  bool expect_not_regular = false;
  /// K_eps for the discontinuity fixtures, and the minimal solution for any eps > 0.
  std::function<Matrix(double)> perturbed_k;
  std::optional<Matrix> perturbed_phi;

  Problem problem() const { return from_k(k, n); }
};

Fixture fixture(FixtureId id);

enum class Category { Nonsingular, IrreducibleSingular, ReducibleSingularRegular };

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view text) noexcept;

struct GenSpec {
  std::size_t n = 2;
  std::size_t m = 2;
  std::uint64_t seed = 0;
  Category category = Category::Nonsingular;
  /// Ke = 0 exactly for the singular categories; otherwise a random positive
  /// diagonal similarity is applied (K stays singular and regular).
  bool zero_row_sums = true;
  /// Indices of the closed class (the rows whose block has no entries
  /// pointing outside it) for ReducibleSingularRegular; random when unset.
  std::optional<std::vector<std::size_t>> closed_class;
  /// Probability that an off-diagonal entry is nonzero.
  double density = 0.6;
  /// Singular categories: demand u1^T v1 = u2^T v2 (rescales the bottom block rows).
  bool critical = false;
  /// Singular categories: demand u1^T v1 != u2^T v2 beyond the case band.
  bool nonzero_gap = false;
};

/// Seeded 64-bit Mersenne Twister (std::mt19937_64); doubles are (x >> 11) * 2^-53.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }
  /// Integer in [0, bound).
  std::size_t below(std::size_t bound) noexcept;
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Redraws (at most 100 times) until categorize confirms the requested
/// category; singular categories also require a one-dimensional null space.
/// Throws GenerationFailure when the cap is hit.
Matrix random_generator_k(const GenSpec& spec);
Problem random_problem(const GenSpec& spec);

/// K(alpha) = [D -C; -alpha B  alpha A].
Problem perturb_alpha(const Problem& p, double alpha);

}  // namespace mare
