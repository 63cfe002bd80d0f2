#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "mare/linalg.hpp"
#include "mare/solvers.hpp"
#include "solver_common.hpp"

namespace mare {

namespace {

double max_diag(const Matrix& m) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) best = std::max(best, m(i, i));
  return best;
}

struct Parameters {
  double alpha;
  double beta;
};

// `equalize` lifts the default pair to alpha = beta; a zero eigenvalue of H
// then maps onto the unit circle and neither E_k nor F_k can blow up.
Parameters choose_parameters(const Problem& p, const SolverOptions& opts, double extra_shift, bool equalize) {
  const double amax = max_diag(p.a());
  const double dmax = max_diag(p.d());
  Parameters out{amax + opts.shift_delta, dmax + opts.shift_delta};
  if (opts.gamma && (opts.alpha || opts.beta))
    throw Error(ErrorCode::InvalidArgument, "gamma excludes alpha and beta");
  if (opts.gamma) {
    out.alpha = out.beta = *opts.gamma;
  } else {
    if (opts.alpha) out.alpha = *opts.alpha;
    if (opts.beta) out.beta = *opts.beta;
    if (equalize && !opts.alpha && !opts.beta) out.alpha = out.beta = std::max(out.alpha, out.beta);
  }
  if (out.alpha < amax)
    throw Error(ErrorCode::InvalidArgument, "alpha must be at least max a_ii = " + std::to_string(amax));
  if (out.beta < dmax)
    throw Error(ErrorCode::InvalidArgument, "beta must be at least max d_ii = " + std::to_string(dmax));
  out.alpha += extra_shift;
  out.beta += extra_shift;
  return out;
}

double successive_change(const Matrix& next, const Matrix& prev) {
  return (next - prev).norm_inf() / std::max(1.0, next.norm_inf());
}

// `keep_best`: on overflow, breakdown or the step limit, return the best
// iterate whose residual already passed the confirmation threshold.
Solution run_doubling(const Problem& p, const SolverOptions& opts, Parameters par, ConvergenceLog log,
                      bool keep_best) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  log.alpha = par.alpha;
  log.beta = par.beta;
  DoublingState st = doubling_init(p, par.alpha, par.beta);
  if (opts.on_doubling_step) opts.on_doubling_step(st);

  const Matrix in = Matrix::identity(n);
  const Matrix im = Matrix::identity(m);
  const std::size_t max_iter = detail::max_iter_of(opts);
  const double confirm = std::max(100.0 * opts.tol, 1e-13);

  auto finish = [&](Matrix h, Matrix g) {
    Solution sol = detail::make_solution(p, std::move(h), std::move(log));
    sol.s = p.a() - p.b() * g;
    sol.residual_psi = residual(dual(p), g).norm_fro();
    try {
      sol.log.rate_bound = doubling_rate_bound(sol.r, *sol.s, par.alpha, par.beta);
    } catch (const Error&) {
      sol.log.rate_bound = std::numeric_limits<double>::quiet_NaN();
    }
    sol.psi = std::move(g);
    return sol;
  };

  // On a non-simple zero eigenvalue of H the iterates stall near sqrt(eps)
  // and then drift while E_k or F_k blows up.
  std::optional<DoublingState> best;
  double best_res = INFINITY;
  auto stalled = [&](const std::string& why) {
    log.rate_estimate = detail::last_ratio(log.residual_history);
    log.note += (log.note.empty() ? "" : "; ") + why + "; best iterate (step " + std::to_string(best->k) + ") kept";
    return finish(std::move(best->h), std::move(best->g));
  };

  for (std::size_t k = 1; k <= max_iter; ++k) {
    Matrix w1, w2;
    try {
      // (I - GH)^{-1} [E  G] and (I - HG)^{-1} [F  H]
      w1 = linear_solve(in - st.g * st.h, hstack(st.e, st.g));
      w2 = linear_solve(im - st.h * st.g, hstack(st.f, st.h));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularMatrix && e.code() != ErrorCode::NonFinite) throw;
      if (best) return stalled("I - G_k H_k near singular at step " + std::to_string(k));
      throw SolverFailure(ErrorCode::NearSingularIGH,
                          std::string("doubling: I - G_k H_k near singular at step ") + std::to_string(k) +
                              ": " + e.what(),
                          std::move(log));
    }
    const Matrix ie_e = w1.block(0, 0, n, n);
    const Matrix ie_g = w1.block(0, n, n, m);
    const Matrix if_f = w2.block(0, 0, m, m);
    const Matrix if_h = w2.block(0, m, m, n);

    DoublingState next;
    next.k = k;
    next.e = st.e * ie_e;
    next.f = st.f * if_f;
    next.g = st.g + st.e * ie_g * st.f;
    next.h = st.h + st.f * if_h * st.e;

    if (!next.e.all_finite() || !next.f.all_finite() || !next.g.all_finite() || !next.h.all_finite()) {
      if (best) return stalled("iterates overflowed at step " + std::to_string(k));
      throw SolverFailure(ErrorCode::NearSingularIGH,
                          "doubling: iterates overflowed at step " + std::to_string(k), std::move(log));
    }
    const double dh = successive_change(next.h, st.h);
    const double dg = successive_change(next.g, st.g);
    st = std::move(next);
    if (opts.on_doubling_step) opts.on_doubling_step(st);

    const double res = relative_residual(p, st.h);
    log.residual_history.push_back(res);
    log.iterations = k;
    if (dh <= opts.tol && dg <= opts.tol) {
      log.rate_estimate = detail::last_ratio(log.residual_history);
      if (res > confirm) {
        throw SolverFailure(ErrorCode::NoConvergence,
                            "doubling: iterates settled but relative residual " + std::to_string(res) +
                                " exceeds " + std::to_string(confirm),
                            std::move(log));
      }
      return finish(std::move(st.h), std::move(st.g));
    }
    if (keep_best && res <= confirm && res < best_res) {
      best_res = res;
      best = st;
    }
  }
  if (best) return stalled("step limit reached");
  log.rate_estimate = detail::last_ratio(log.residual_history);
  throw SolverFailure(ErrorCode::MaxIterExceeded,
                      "doubling: no convergence in " + std::to_string(max_iter) + " steps", std::move(log));
}

}  // namespace

DoublingState doubling_init(const Problem& p, double alpha, double beta) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const Matrix in = Matrix::identity(n);
  const Matrix im = Matrix::identity(m);
  const Matrix lhs = vstack(hstack(p.d() + alpha * in, -p.c()), hstack(p.b(), -p.a() - beta * im));
  const Matrix rhs = vstack(hstack(p.d() - beta * in, -p.c()), hstack(p.b(), -p.a() + alpha * im));
  Matrix x;
  try {
    x = linear_solve(lhs, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularBlock, std::string("doubling initialization: ") + e.what());
  }
  DoublingState st;
  st.e = x.block(0, 0, n, n);
  st.g = -x.block(0, n, n, m);
  st.h = -x.block(n, 0, m, n);
  st.f = x.block(n, n, m, m);
  return st;
}

double doubling_rate_bound(const Matrix& r, const Matrix& s, double alpha, double beta) {
  const Matrix in = Matrix::identity(r.rows());
  const Matrix im = Matrix::identity(s.rows());
  const double rho_r = spectral_radius(linear_solve(r + alpha * in, r - beta * in));
  const double rho_s = spectral_radius(linear_solve(s + beta * im, s - alpha * im));
  return rho_r * rho_s;
}

Solution solve_doubling(const Problem& p, const SolverOptions& opts) {
  detail::check_options(opts);
  const Parameters par = choose_parameters(p, opts, 0.0, false);
  try {
    return run_doubling(p, opts, par, make_log(Method::Doubling), false);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearSingularIGH && e.code() != ErrorCode::SingularBlock) throw;
  }
  const double shift = 1e-2 * std::max({std::abs(par.alpha), std::abs(par.beta), 1e-300});
  ConvergenceLog log = make_log(Method::Doubling);
  log.shift_retry = true;
  log.note = "near-singular I - GH or overflow; retried with alpha, beta shifted by " + std::to_string(shift);
  if (!opts.gamma && !opts.alpha && !opts.beta) log.note += " and set equal";
  return run_doubling(p, opts, choose_parameters(p, opts, shift, true), std::move(log), true);
}

}  // namespace mare
