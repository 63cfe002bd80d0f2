#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mare/case_label.hpp"
#include "mare/error.hpp"
#include "mare/matrix.hpp"
#include "mare/mmatrix.hpp"
#include "mare/riccati.hpp"

namespace mare {

enum class Method {
  FixedPoint,
  Newton,
  Doubling,
  Schur,
  /// Reserved; every entry point rejects it with InvalidArgument.
  ModifiedSchur,
};

/// "fixed_point", "newton", "doubling", "schur", "modified_schur".
std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

/// 10000 for fixed point, 100 otherwise.
std::size_t default_max_iter(Method method) noexcept;

/// Iterate of the doubling recurrence: E (n x n), F (m x m), G (n x m), H (m x n).
struct DoublingState {
  Matrix e, f, g, h;
  std::size_t k = 0;
};

struct SolverOptions {
  Method method = Method::Doubling;
  /// Relative residual target (successive-difference target for doubling).
  double tol = 1e-12;
  /// Unset means default_max_iter(method).
  std::optional<std::size_t> max_iter;
  std::optional<double> alpha;
  std::optional<double> beta;
  /// Single-parameter doubling: alpha = beta = gamma.
  std::optional<double> gamma;
  /// Added to the default alpha and beta.
  double shift_delta = 0.0;

  /// Called with (k, X_k) for k = 0, 1, ... by fixed point and Newton.
  std::function<void(std::size_t, const Matrix&)> on_iterate;
  /// Called after initialization (k = 0) and after every doubling step.
  std::function<void(const DoublingState&)> on_doubling_step;
};

struct ConvergenceLog {
  Method method = Method::Doubling;
  std::size_t iterations = 0;
  /// Relative residual of each iterate X_1, X_2, ... (X_0 excluded).
  std::vector<double> residual_history;
  /// Last observed ratio res_k / res_{k-1}; NaN when fewer than two entries.
  double rate_estimate = 0.0;
  /// Doubling parameters actually used; NaN for other methods.
  double alpha = 0.0;
  double beta = 0.0;
  /// rho((R+aI)^{-1}(R-bI)) * rho((S+bI)^{-1}(S-aI)) for doubling, else NaN.
  double rate_bound = 0.0;
  /// Condition estimate of Y1 (Schur) or of the last Newton operator; NaN when unused.
  double condition = 0.0;
  bool shift_retry = false;
  std::string note;
};

ConvergenceLog make_log(Method method);

/// Solver error carrying the partial convergence log.
class SolverFailure : public Error {
 public:
  SolverFailure(ErrorCode code, const std::string& message, ConvergenceLog log);
  const ConvergenceLog& log() const noexcept { return log_; }

 private:
  ConvergenceLog log_;
};

struct Diagnostics {
  MatrixKind kind;
  CaseLabel case_label = CaseLabel::NonsingularK;
  FactorizationReport factorization;
  /// Zero-diagonal rows of A removed before solving.
  std::size_t reduced_rows = 0;
  /// rho(Phi Psi); NaN if Psi is unavailable.
  double rho_phi_psi = 0.0;
  /// Message of the dual solve failure, if any (then Psi is absent).
  std::string dual_error;
};

struct Solution {
  Matrix phi;
  std::optional<Matrix> psi;
  /// D - C Phi
  Matrix r;
  /// A - B Psi
  std::optional<Matrix> s;
  /// ||R(Phi)||_F and the same for Psi on the dual equation.
  double residual_phi = 0.0;
  double residual_psi = 0.0;
  ConvergenceLog log;
  std::optional<ConvergenceLog> dual_log;
  Diagnostics diagnostics;
};

/// Entrywise splitting iteration from X_0 = 0:
/// x_{k+1}[i,j] = (X C X + X D2 + A2 X + B)[i,j] / (a_ii + d_jj), A2 = diag(A) - A, D2 = diag(D) - D.
Solution solve_fixed_point(const Problem& p, const SolverOptions& opts = {});

/// Newton from X_0 = 0: (A - X_k C) X_{k+1} + X_{k+1} (D - C X_k) = B - X_k C X_k.
/// Falls back to a dense Kronecker solve (m n <= 64) when the Sylvester operator is near singular.
Solution solve_newton(const Problem& p, const SolverOptions& opts = {});

/// Phi = Y2 Y1^{-1} from the leading n ordered Schur vectors [Y1; Y2] of H.
Solution solve_schur(const Problem& p, const SolverOptions& opts = {});

/// X = Y2 Y1^{-1} for the invariant subspace of H belonging to the listed
/// eigenvalues, given as indices into the descending-real-part order.
Matrix schur_select(const Problem& p, std::span<const std::size_t> selection);

/// Blocks from [D+aI, -C; B, -A-bI] [E0, -G0; -H0, F0] = [D-bI, -C; B, -A+aI].
DoublingState doubling_init(const Problem& p, double alpha, double beta);

/// E+ = E(I-GH)^{-1}E, F+ = F(I-HG)^{-1}F, G+ = G + E(I-GH)^{-1}GF, H+ = H + F(I-HG)^{-1}HE.
/// H_k -> Phi and G_k -> Psi; both are returned.
Solution solve_doubling(const Problem& p, const SolverOptions& opts = {});

/// rho((R+aI)^{-1}(R-bI)) * rho((S+bI)^{-1}(S-aI)).
double doubling_rate_bound(const Matrix& r, const Matrix& s, double alpha, double beta);

/// Full pipeline: categorize K, reduce zero diagonals, solve, embed, solve the
/// dual for Psi with the same method, verify the factorization, classify.
/// Throws NotMMatrix / NotRegular for unsuitable K.
Solution solve(const Problem& p, const SolverOptions& opts = {});

}  // namespace mare
