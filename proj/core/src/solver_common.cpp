#include "solver_common.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mare::detail {

std::size_t max_iter_of(const SolverOptions& opts) {
  return opts.max_iter.value_or(default_max_iter(opts.method));
}

void check_options(const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (opts.max_iter && *opts.max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  if (opts.method == Method::ModifiedSchur)
    throw Error(ErrorCode::InvalidArgument, "modified_schur is reserved and not implemented");
}

double last_ratio(const std::vector<double>& history) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (history.size() < 2) return nan;
  const double prev = history[history.size() - 2];
  return prev > 0.0 ? history.back() / prev : nan;
}

Solution make_solution(const Problem& p, Matrix phi, ConvergenceLog log) {
  Solution sol;
  sol.r = p.d() - p.c() * phi;
  sol.residual_phi = residual(p, phi).norm_fro();
  sol.phi = std::move(phi);
  sol.log = std::move(log);
  return sol;
}

}  // namespace mare::detail
