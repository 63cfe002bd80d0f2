#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mare/analysis.hpp"
#include "mare/linalg.hpp"
#include "mare/solvers.hpp"
#include "solver_common.hpp"

namespace mare {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::FixedPoint: return "fixed_point";
    case Method::Newton: return "newton";
    case Method::Doubling: return "doubling";
    case Method::Schur: return "schur";
    case Method::ModifiedSchur: return "modified_schur";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
  for (Method m : {Method::FixedPoint, Method::Newton, Method::Doubling, Method::Schur, Method::ModifiedSchur})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

std::size_t default_max_iter(Method method) noexcept {
  return method == Method::FixedPoint ? 10000 : 100;
}

std::string_view to_string(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::NonsingularK: return "NonsingularK";
    case CaseLabel::CaseI: return "I";
    case CaseLabel::CaseII: return "II";
    case CaseLabel::CaseIII: return "III";
    case CaseLabel::DegenerateNullSpace: return "Degenerate";
  }
  return "unknown";
}

std::optional<CaseLabel> parse_case_label(std::string_view text) noexcept {
  for (CaseLabel c : {CaseLabel::NonsingularK, CaseLabel::CaseI, CaseLabel::CaseII, CaseLabel::CaseIII,
                      CaseLabel::DegenerateNullSpace})
    if (text == to_string(c)) return c;
  return std::nullopt;
}

ConvergenceLog make_log(Method method) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ConvergenceLog log;
  log.method = method;
  log.rate_estimate = nan;
  log.alpha = nan;
  log.beta = nan;
  log.rate_bound = nan;
  log.condition = nan;
  return log;
}

SolverFailure::SolverFailure(ErrorCode code, const std::string& message, ConvergenceLog log)
    : Error(code, message), log_(std::move(log)) {}

namespace {

Solution dispatch(const Problem& p, const SolverOptions& opts) {
  switch (opts.method) {
    case Method::FixedPoint: return solve_fixed_point(p, opts);
    case Method::Newton: return solve_newton(p, opts);
    case Method::Doubling: return solve_doubling(p, opts);
    case Method::Schur: return solve_schur(p, opts);
    case Method::ModifiedSchur: break;
  }
  throw Error(ErrorCode::InvalidArgument, "modified_schur is reserved and not implemented");
}

struct Reduced {
  Matrix phi;
  ConvergenceLog log;
  std::size_t r = 0;
};

Reduced solve_reduced(const Problem& p, const SolverOptions& opts) {
  const ReductionData red = reduce_zero_diagonal(p);
  if (!red.reduced) {
    ConvergenceLog log = make_log(opts.method);
    log.residual_history.push_back(0.0);
    log.note = "every diagonal entry of A is zero; Phi = 0";
    return {Matrix(p.m(), p.n()), std::move(log), red.r};
  }
  Solution s = dispatch(*red.reduced, opts);
  if (opts.method != Method::Schur) {
    // Iterations only reach sqrt(eps) on a non-simple zero eigenvalue; polish
    // through the deflated subspace when it agrees with the iterate.
    if (auto polished = detail::deflated_schur_solution(*red.reduced)) {
      if (max_abs_diff(*polished, s.phi) <= 1e-5 * std::max(1.0, polished->norm_max())) {
        s.phi = std::move(*polished);
        s.log.note = "non-simple zero eigenvalue at the split; iterate polished by null-vector deflation";
      }
    }
  }
  return {embed_solution(red, s.phi), std::move(s.log), red.r};
}

}  // namespace

Solution solve(const Problem& p, const SolverOptions& opts) {
  detail::check_options(opts);
  const MatrixKind kind = categorize(k_matrix(p));
  if (!kind.is_m) throw Error(ErrorCode::NotMMatrix, "K is not an M-matrix");
  if (!kind.regular)
    throw Error(ErrorCode::NotRegular, "K is not a regular M-matrix: no v > 0 with K v >= 0");

  Reduced primal = solve_reduced(p, opts);
  Solution sol = detail::make_solution(p, std::move(primal.phi), std::move(primal.log));
  sol.diagnostics.kind = kind;
  sol.diagnostics.reduced_rows = primal.r;
  sol.diagnostics.rho_phi_psi = std::numeric_limits<double>::quiet_NaN();

  const Problem dp = dual(p);
  try {
    Reduced d = solve_reduced(dp, opts);
    sol.s = p.a() - p.b() * d.phi;
    sol.residual_psi = residual(dp, d.phi).norm_fro();
    sol.dual_log = std::move(d.log);
    sol.psi = std::move(d.phi);
  } catch (const Error& e) {
    sol.diagnostics.dual_error = e.what();
  }

  if (sol.psi) {
    sol.diagnostics.factorization = verify_factorization(p, sol.phi, *sol.psi);
    sol.diagnostics.rho_phi_psi = spectral_radius(sol.phi * *sol.psi);
  }
  sol.diagnostics.case_label = classify_case(p, kind);
  return sol;
}

}  // namespace mare
