#include <string>

#include "mare/solvers.hpp"
#include "solver_common.hpp"

namespace mare {

Solution solve_fixed_point(const Problem& p, const SolverOptions& opts) {
  detail::check_options(opts);
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const Matrix& a = p.a();
  const Matrix& d = p.d();

  Matrix denom(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      denom(i, j) = a(i, i) + d(j, j);
      if (!(denom(i, j) > 0.0))
        throw Error(ErrorCode::IllDefined, "a_ii + d_jj <= 0 at (" + std::to_string(i) + ", " +
                                               std::to_string(j) + "); reduce zero diagonals first");
    }
  }
  Matrix a2 = -a;
  for (std::size_t i = 0; i < m; ++i) a2(i, i) = 0.0;
  Matrix d2 = -d;
  for (std::size_t j = 0; j < n; ++j) d2(j, j) = 0.0;

  ConvergenceLog log = make_log(Method::FixedPoint);
  const std::size_t max_iter = detail::max_iter_of(opts);
  Matrix x(m, n);
  if (opts.on_iterate) opts.on_iterate(0, x);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    Matrix rhs = x * p.c() * x;
    rhs += x * d2;
    rhs += a2 * x;
    rhs += p.b();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) rhs(i, j) /= denom(i, j);
    x = std::move(rhs);
    if (opts.on_iterate) opts.on_iterate(k, x);

    const double res = relative_residual(p, x);
    log.residual_history.push_back(res);
    log.iterations = k;
    if (res <= opts.tol) {
      log.rate_estimate = detail::last_ratio(log.residual_history);
      return detail::make_solution(p, std::move(x), std::move(log));
    }
  }
  log.rate_estimate = detail::last_ratio(log.residual_history);
  throw SolverFailure(ErrorCode::MaxIterExceeded,
                      "fixed point: no convergence in " + std::to_string(max_iter) + " iterations",
                      std::move(log));
}

}  // namespace mare
