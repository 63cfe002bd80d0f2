#include "mare/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mare/analysis.hpp"
#include "mare/error.hpp"
#include "mare/mmatrix.hpp"

namespace mare {

namespace {

constexpr int kRedrawCap = 100;

// Nonpositive off-diagonals on rows `rows`, columns `cols`, each present with
// probability `density`.
void scatter(Matrix& k, Rng& rng, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
             double density) {
  for (std::size_t i : rows)
    for (std::size_t j : cols)
      if (i != j && rng.uniform01() < density) k(i, j) = -rng.uniform(0.1, 1.0);
}

// Adds a directed cycle through `idx` so the block is irreducible.
void add_cycle(Matrix& k, Rng& rng, const std::vector<std::size_t>& idx) {
  if (idx.size() < 2) return;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const std::size_t i = idx[t];
    const std::size_t j = idx[(t + 1) % idx.size()];
    if (k(i, j) == 0.0) k(i, j) = -rng.uniform(0.1, 1.0);
  }
}

// Fisher-Yates driven by Rng so streams do not depend on the standard library.
void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

void set_row_sums_zero(Matrix& k) {
  for (std::size_t i = 0; i < k.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k.cols(); ++j)
      if (j != i) s -= k(i, j);
    k(i, i) = s;
  }
}

void scale_similarity(Matrix& k, Rng& rng) {
  Vector s(k.rows());
  for (double& x : s) x = rng.uniform(0.5, 2.0);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) k(i, j) *= s[i] / s[j];
}

// Rescales rows n.. so that u1^T v1 = u2^T v2; false if impossible.
bool make_critical(Matrix& k, std::size_t n) {
  NullData nd;
  try {
    nd = null_data(k, n);
  } catch (const Error&) {
    return false;
  }
  const double top = dot(nd.u1, nd.v1);
  const double bottom = dot(nd.u2, nd.v2);
  if (!(top > 0.0) || !(bottom > 0.0)) return false;
  // Scaling the bottom rows by a keeps v and divides u2 by a.
  const double a = bottom / top;
  for (std::size_t i = n; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) k(i, j) *= a;
  return true;
}

Matrix draw(const GenSpec& spec, Rng& rng) {
  const std::size_t size = spec.n + spec.m;
  Matrix k(size, size);
  std::vector<std::size_t> all(size);
  std::iota(all.begin(), all.end(), 0);

  switch (spec.category) {
    case Category::Nonsingular: {
      scatter(k, rng, all, all, spec.density);
      set_row_sums_zero(k);
      for (std::size_t i = 0; i < size; ++i) k(i, i) += rng.uniform(0.1, 1.1);
      break;
    }
    case Category::IrreducibleSingular: {
      scatter(k, rng, all, all, spec.density);
      std::vector<std::size_t> order = all;
      shuffle(order, rng);
      add_cycle(k, rng, order);
      set_row_sums_zero(k);
      break;
    }
    case Category::ReducibleSingularRegular: {
      std::vector<std::size_t> closed;
      if (spec.closed_class) {
        closed = *spec.closed_class;
      } else {
        std::vector<std::size_t> order = all;
        shuffle(order, rng);
        const std::size_t count = 1 + rng.below(size - 1);
        closed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
      }
      std::sort(closed.begin(), closed.end());
      std::vector<std::size_t> open;
      std::set_difference(all.begin(), all.end(), closed.begin(), closed.end(), std::back_inserter(open));
      // Open rows feed every open row into the closed class; the closed class never leaves itself.
      scatter(k, rng, open, all, spec.density);
      for (std::size_t i : open) {
        const std::size_t j = closed[rng.below(closed.size())];
        if (k(i, j) == 0.0) k(i, j) = -rng.uniform(0.1, 1.0);
      }
      scatter(k, rng, closed, closed, spec.density);
      add_cycle(k, rng, closed);
      set_row_sums_zero(k);
      break;
    }
  }
  if (spec.category != Category::Nonsingular && !spec.zero_row_sums) scale_similarity(k, rng);
  if (spec.category != Category::Nonsingular && spec.critical && !make_critical(k, spec.n)) return Matrix();
  return k;
}

bool accepted(const GenSpec& spec, const Matrix& k) {
  if (k.empty()) return false;
  const MatrixKind kind = categorize(k);
  if (!kind.is_m || !kind.regular) return false;
  switch (spec.category) {
    case Category::Nonsingular:
      return !kind.singular;
    case Category::IrreducibleSingular:
      if (!kind.singular || !kind.irreducible || kind.null_rank != 1) return false;
      break;
    case Category::ReducibleSingularRegular:
      if (!kind.singular || kind.irreducible || kind.null_rank != 1) return false;
      break;
  }
  if (spec.critical || spec.nonzero_gap) {
    const CaseLabel label = classify_case(from_k(k, spec.n), kind);
    if (spec.critical && label != CaseLabel::CaseIII) return false;
    if (spec.nonzero_gap && label != CaseLabel::CaseI && label != CaseLabel::CaseII) return false;
  }
  return true;
}

}  // namespace

double Rng::uniform01() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t bound) noexcept {
  return static_cast<std::size_t>(uniform01() * static_cast<double>(bound)) % bound;
}

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::Nonsingular: return "nonsingular";
    case Category::IrreducibleSingular: return "irreducible_singular";
    case Category::ReducibleSingularRegular: return "reducible_singular_regular";
  }
  return "unknown";
}

std::optional<Category> parse_category(std::string_view text) noexcept {
  for (Category c : {Category::Nonsingular, Category::IrreducibleSingular, Category::ReducibleSingularRegular})
    if (text == to_string(c)) return c;
  return std::nullopt;
}

Matrix random_generator_k(const GenSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw Error(ErrorCode::InvalidArgument, "n and m must be at least 1");
  if (!(spec.density >= 0.0 && spec.density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
  if (spec.critical && spec.nonzero_gap)
    throw Error(ErrorCode::InvalidArgument, "critical and nonzero_gap are mutually exclusive");
  if (spec.closed_class) {
    const auto& c = *spec.closed_class;
    if (c.empty() || c.size() >= spec.n + spec.m ||
        std::any_of(c.begin(), c.end(), [&](std::size_t i) { return i >= spec.n + spec.m; }))
      throw Error(ErrorCode::InvalidArgument, "closed class must be a proper nonempty index subset");
  }
  Rng rng(spec.seed);
  for (int attempt = 0; attempt < kRedrawCap; ++attempt) {
    Matrix k = draw(spec, rng);
    if (accepted(spec, k)) return k;
  }
  throw Error(ErrorCode::GenerationFailure, "no " + std::string(to_string(spec.category)) + " matrix after " +
                                                std::to_string(kRedrawCap) + " draws (seed " +
                                                std::to_string(spec.seed) + ")");
}

Problem random_problem(const GenSpec& spec) { return from_k(random_generator_k(spec), spec.n); }

Problem perturb_alpha(const Problem& p, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  return Problem(alpha * p.a(), alpha * p.b(), p.c(), p.d());
}

}  // namespace mare
