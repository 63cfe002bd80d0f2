#pragma once

#include <cstddef>
#include <optional>

#include "mare/solvers.hpp"

namespace mare::detail {

std::size_t max_iter_of(const SolverOptions& opts);
void check_options(const SolverOptions& opts);

/// Last res_k / res_{k-1}; NaN with fewer than two entries or a zero denominator.
double last_ratio(const std::vector<double>& history);

/// Fills R, residual_phi and the log of a freshly computed Phi.
Solution make_solution(const Problem& p, Matrix phi, ConvergenceLog log);

/// When zero eigenvalues of H straddle the split after position n: the
/// solution from the leading n-dimensional invariant subspace of
/// H + eta W W^T, W an orthonormal basis of null(K). Returns nullopt unless
/// that applies and the result solves the original equation.
std::optional<Matrix> deflated_schur_solution(const Problem& p);

}  // namespace mare::detail
