#include <algorithm>
#include <string>
#include <vector>

#include "lapack.hpp"
#include "mare/analysis.hpp"
#include "mare/linalg.hpp"
#include "mare/solvers.hpp"
#include "solver_common.hpp"

namespace mare {

namespace {

// X = Y2 Y1^{-1} from the leading k columns of Q.
Matrix graph_solution(const Matrix& q, std::size_t n, double& condition) {
  const std::size_t m = q.rows() - n;
  const Matrix y1 = q.block(0, 0, n, n);
  const Matrix y2 = q.block(n, 0, m, n);
  condition = condition_estimate(y1);
  try {
    // X Y1 = Y2  <=>  Y1^T X^T = Y2^T
    return linear_solve(y1.transpose(), y2.transpose()).transpose();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularY1, std::string("leading Schur block Y1 is singular: ") + e.what());
  }
}

}  // namespace

namespace detail {

std::optional<Matrix> deflated_schur_solution(const Problem& p) {
  const std::size_t n = p.n();
  const EigenStructure es = zero_eigen_structure(p);
  if (es.r < 2 || es.n1 >= n || es.n1 + es.r <= n) return std::nullopt;

  // H v = 0 exactly when K v = 0. Every such v lying in the graph of the
  // minimal solution can be pushed to eta without moving that subspace.
  const Matrix k = k_matrix(p);
  const auto svd = lapack::gesvd(k);
  const std::size_t size = k.rows();
  const double cut = kNullRankTol * std::max(1.0, svd.s.front());
  std::size_t rank = 0;
  for (double s : svd.s)
    if (s > cut) ++rank;
  const std::size_t nullity = size - rank;
  if (nullity != n - es.n1) return std::nullopt;

  Matrix h = h_matrix(p);
  const double eta = std::max(h.norm_max(), 1e-300);
  for (std::size_t t = rank; t < size; ++t)
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) h(i, j) += eta * svd.vt(t, i) * svd.vt(t, j);

  Matrix phi;
  try {
    const SchurForm form = ordered_real_schur(h);
    if (!form.splits_cleanly_at(n)) return std::nullopt;
    double condition = 0.0;
    phi = graph_solution(form.q, n, condition);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (relative_residual(p, phi) > 1e-10) return std::nullopt;
  if (phi.min_entry() < -1e-10 * std::max(1.0, phi.norm_max())) return std::nullopt;
  return phi;
}

}  // namespace detail

Solution solve_schur(const Problem& p, const SolverOptions& opts) {
  detail::check_options(opts);
  const std::size_t n = p.n();
  ConvergenceLog log = make_log(Method::Schur);
  if (auto phi = detail::deflated_schur_solution(p)) {
    log.iterations = 1;
    log.note = "non-simple zero eigenvalue at the split; null vectors of K deflated";
    log.residual_history.push_back(relative_residual(p, *phi));
    return detail::make_solution(p, std::move(*phi), std::move(log));
  }
  const SchurForm form = ordered_real_schur(h_matrix(p));
  if (!form.splits_cleanly_at(n))
    throw Error(ErrorCode::SplitsConjugatePair, "eigenvalues n and n+1 of H form a complex pair");
  Matrix phi = graph_solution(form.q, n, log.condition);
  log.iterations = 1;
  log.residual_history.push_back(relative_residual(p, phi));
  return detail::make_solution(p, std::move(phi), std::move(log));
}

Matrix schur_select(const Problem& p, std::span<const std::size_t> selection) {
  const std::size_t n = p.n();
  const std::size_t size = n + p.m();
  SchurForm form = real_schur(h_matrix(p));
  const auto blocks = form.blocks();

  // Rank every eigenvalue (both members of a pair) and remember its block.
  struct Entry {
    Complex value;
    std::size_t block;
  };
  std::vector<Entry> entries;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    entries.push_back({blocks[b].eigenvalue, b});
    if (blocks[b].size == 2) entries.push_back({std::conj(blocks[b].eigenvalue), b});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return eigen_precedes(x.value, y.value); });

  std::vector<std::size_t> picked(selection.begin(), selection.end());
  std::sort(picked.begin(), picked.end());
  if (std::adjacent_find(picked.begin(), picked.end()) != picked.end())
    throw Error(ErrorCode::InvalidArgument, "selection repeats an eigenvalue index");
  if (picked.size() != n)
    throw Error(ErrorCode::InvalidArgument,
                "selection must name exactly n = " + std::to_string(n) + " eigenvalues");

  std::vector<std::size_t> hits(blocks.size(), 0);
  for (std::size_t idx : picked) {
    if (idx >= size) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
    ++hits[entries[idx].block];
  }
  std::vector<std::size_t> chosen;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (hits[b] == 0) continue;
    if (hits[b] != blocks[b].size)
      throw Error(ErrorCode::SplitsConjugatePair, "selection takes one member of a complex pair");
    chosen.push_back(b);
  }
  form = reorder_schur(std::move(form), chosen);
  double condition = 0.0;
  return graph_solution(form.q, n, condition);
}

}  // namespace mare
