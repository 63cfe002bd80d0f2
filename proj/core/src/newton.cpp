#include <cmath>
#include <limits>
#include <string>

#include "mare/linalg.hpp"
#include "mare/solvers.hpp"
#include "solver_common.hpp"

namespace mare {

namespace {

constexpr std::size_t kKroneckerCap = 64;

// P X + X Q = C through (I (x) P + Q^T (x) I) vec(X) = vec(C), column-major vec.
Matrix kronecker_sylvester(const Matrix& p, const Matrix& q, const Matrix& c, double& condition) {
  const std::size_t m = p.rows();
  const std::size_t n = q.rows();
  const std::size_t N = m * n;
  Matrix op(N, N);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row = j * m + i;
      for (std::size_t k = 0; k < m; ++k) op(row, j * m + k) += p(i, k);
      for (std::size_t l = 0; l < n; ++l) op(row, l * m + i) += q(l, j);
    }
  Vector rhs(N);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) rhs[j * m + i] = c(i, j);
  condition = condition_estimate(op);
  const Vector sol = linear_solve(op, rhs, 1e-15);
  Matrix x(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) x(i, j) = sol[j * m + i];
  return x;
}

}  // namespace

Solution solve_newton(const Problem& p, const SolverOptions& opts) {
  detail::check_options(opts);
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  ConvergenceLog log = make_log(Method::Newton);
  const std::size_t max_iter = detail::max_iter_of(opts);

  Matrix x(m, n);
  if (opts.on_iterate) opts.on_iterate(0, x);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const Matrix xc = x * p.c();
    const Matrix lhs_p = p.a() - xc;
    const Matrix lhs_q = p.d() - p.c() * x;
    const Matrix rhs = p.b() - xc * x;
    Matrix next;
    try {
      next = solve_sylvester(lhs_p, lhs_q, rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularOperator) throw;
      if (m * n > kKroneckerCap) {
        throw SolverFailure(ErrorCode::NearSingularOperator,
                            std::string("newton: ") + e.what() + "; critical case suspected", std::move(log));
      }
      try {
        next = kronecker_sylvester(lhs_p, lhs_q, rhs, log.condition);
      } catch (const Error& inner) {
        throw SolverFailure(ErrorCode::NearSingularOperator,
                            std::string("newton: singular Newton operator (") + inner.what() +
                                "); critical case suspected",
                            std::move(log));
      }
      log.note = "near-singular Sylvester operator; dense Kronecker fallback used";
    }
    x = std::move(next);
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
                      "newton: no convergence in " + std::to_string(max_iter) + " iterations", std::move(log));
}

}  // namespace mare
