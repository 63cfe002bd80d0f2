#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mare/case_label.hpp"
#include "mare/matrix.hpp"
#include "mare/mmatrix.hpp"
#include "mare/riccati.hpp"
#include "mare/solvers.hpp"

namespace mare {

/// Default band for the u1^T v1 = u2^T v2 decision, relative to ||u||_2 ||v||_2.
inline constexpr double kGapTol = 1e-10;
/// A square matrix counts as singular when sigma_min <= this * max(1, sigma_max).
inline constexpr double kSingularRatio = 1e-7;
/// conjecture_probe flags any margin at or below this value.
inline constexpr double kProbeMarginTol = 1e-8;

/// Nonnegative null vectors u^T K = 0, K v = 0 (unit 1-norm) split at n.
struct NullData {
  Vector u1, u2, v1, v2;
  /// u1^T v1 - u2^T v2
  double gap = 0.0;
  /// ||u||_2 ||v||_2, the scale of the gap band.
  double scale = 0.0;
};

/// Throws DegenerateNullSpace when K or K^T lacks a one-dimensional,
/// sign-definite null space.
NullData null_data(const Matrix& k, std::size_t n);

struct EigenStructure {
  std::size_t m1 = 0;  // Re lambda < 0
  std::size_t n1 = 0;  // Re lambda > 0
  std::size_t r = 0;   // |lambda| within the zero band
  std::size_t eigvec_count = 0;  // dim null(H)
  std::vector<Complex> lambdas;  // descending real part
};

/// `tol` <= 0 selects 1e-6 * max(1, max|H_ij|).
EigenStructure zero_eigen_structure(const Problem& p, double tol = 0.0);

CaseLabel classify_case(const Problem& p);
/// Reuses an existing categorization of K.
CaseLabel classify_case(const Problem& p, const MatrixKind& kind_of_k);

/// sigma_min / max(1, sigma_max)
double singularity_ratio(const Matrix& m);
bool numerically_singular(const Matrix& m, double ratio = kSingularRatio);

struct PropertyCheck {
  std::string name;
  bool pass = false;
  /// Signed slack: >= 0 for satisfied inequalities; for equalities minus the defect.
  double margin = 0.0;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool all_pass() const noexcept;
  const PropertyCheck* find(std::string_view name) const noexcept;
};

/// Certificate bounds, null-vector bounds, regularity of I - Phi Psi and
/// I - Psi Phi, the case-specific equalities and the eigenvalue assignment of
/// R and S. `sol` must carry Psi.
PropertyReport verify_properties(const Problem& p, const Solution& sol, std::span<const double> certificate,
                                 const std::optional<NullData>& nd, double tol = 1e-8);

struct ProbeResult {
  bool skipped = false;
  std::string reason;
  double rho = 0.0;
  double margin = 0.0;
  CaseLabel label = CaseLabel::NonsingularK;
  /// margin <= kProbeMarginTol
  bool candidate = false;
};

/// rho(Phi Psi) and 1 - rho for singular regular K outside the critical case.
ProbeResult conjecture_probe(const Problem& p, const Solution& sol);

struct SecondSolutionReport {
  bool skipped = false;
  std::string reason;
  std::size_t subsets = 0;
  std::size_t graph_solutions = 0;
  /// Solutions with every entry > 1e-10 * max(1, max|X_ij|).
  std::vector<Matrix> positive;
  bool within_bound = true;
};

/// Enumerates every n-subset of eigenvalues of H (n + m <= 10, all simple)
/// and counts the entrywise positive solutions, which must be at most two.
SecondSolutionReport second_solution_count_check(const Problem& p);

}  // namespace mare
