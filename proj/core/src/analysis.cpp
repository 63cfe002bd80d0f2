#include "mare/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lapack.hpp"
#include "mare/error.hpp"
#include "mare/linalg.hpp"

namespace mare {

namespace {

Vector slice(const Vector& w, std::size_t from, std::size_t count) {
  return Vector(w.begin() + static_cast<std::ptrdiff_t>(from),
                w.begin() + static_cast<std::ptrdiff_t>(from + count));
}

double max_abs(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

// min_i (rhs_i - lhs_i): nonnegative when lhs <= rhs entrywise.
double slack(std::span<const double> lhs, std::span<const double> rhs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lhs.size(); ++i) best = std::min(best, rhs[i] - lhs[i]);
  return lhs.empty() ? 0.0 : best;
}

double defect(std::span<const double> lhs, std::span<const double> rhs) {
  double best = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) best = std::max(best, std::abs(rhs[i] - lhs[i]));
  return best;
}

void add_le(PropertyReport& rep, std::string name, std::span<const double> lhs, std::span<const double> rhs,
            double tol) {
  const double s = slack(lhs, rhs);
  const double band = tol * std::max(1.0, std::max(max_abs(lhs), max_abs(rhs)));
  rep.checks.push_back({std::move(name), s >= -band, s});
}

void add_eq(PropertyReport& rep, std::string name, std::span<const double> lhs, std::span<const double> rhs,
            double tol) {
  const double d = defect(lhs, rhs);
  const double band = tol * std::max(1.0, std::max(max_abs(lhs), max_abs(rhs)));
  rep.checks.push_back({std::move(name), d <= band, -d});
}

void add_singular(PropertyReport& rep, std::string name, const Matrix& m, bool expect_singular) {
  const double ratio = singularity_ratio(m);
  const bool singular = ratio <= kSingularRatio;
  rep.checks.push_back({std::move(name), singular == expect_singular,
                        expect_singular ? kSingularRatio - ratio : ratio - kSingularRatio});
}

void add_regular(PropertyReport& rep, std::string name, const Matrix& m, double tol) {
  const MatrixKind kind = categorize(clean_z(m, tol), std::max(kCategorizeTol, tol));
  rep.checks.push_back({std::move(name), kind.is_m && kind.regular, kind.spectral_gap});
}

// Largest pairwise distance between two eigenvalue lists after sorting both.
double spectrum_distance(std::vector<Complex> a, std::vector<Complex> b) {
  sort_eigenvalues(a);
  sort_eigenvalues(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

NullData null_data(const Matrix& k, std::size_t n) {
  if (!k.is_square() || n > k.rows()) throw Error(ErrorCode::BadDimensions, "null_data: bad K or n");
  Vector u, v;
  try {
    v = nonneg_null_vector(k, Side::Right);
    u = nonneg_null_vector(k, Side::Left);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NullSpaceDimension && e.code() != ErrorCode::SignFailure) throw;
    throw Error(ErrorCode::DegenerateNullSpace, e.what());
  }
  const std::size_t m = k.rows() - n;
  NullData nd;
  nd.u1 = slice(u, 0, n);
  nd.u2 = slice(u, n, m);
  nd.v1 = slice(v, 0, n);
  nd.v2 = slice(v, n, m);
  nd.gap = dot(nd.u1, nd.v1) - dot(nd.u2, nd.v2);
  nd.scale = norm2(u) * norm2(v);
  return nd;
}

EigenStructure zero_eigen_structure(const Problem& p, double tol) {
  const Matrix h = h_matrix(p);
  if (tol <= 0.0) tol = 1e-6 * std::max(1.0, h.norm_max());
  EigenStructure es;
  es.lambdas = eigenvalues(h);
  sort_eigenvalues(es.lambdas);
  for (const Complex& l : es.lambdas) {
    if (std::abs(l) <= tol)
      ++es.r;
    else if (l.real() > tol)
      ++es.n1;
    else if (l.real() < -tol)
      ++es.m1;
  }
  es.eigvec_count = es.r == 0 ? 0 : null_rank(h);
  return es;
}

CaseLabel classify_case(const Problem& p) { return classify_case(p, categorize(k_matrix(p))); }

CaseLabel classify_case(const Problem& p, const MatrixKind& kind) {
  if (!kind.singular) return CaseLabel::NonsingularK;
  NullData nd;
  try {
    nd = null_data(k_matrix(p), p.n());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateNullSpace) throw;
    return CaseLabel::DegenerateNullSpace;
  }
  if (std::abs(nd.gap) <= kGapTol * nd.scale) return CaseLabel::CaseIII;
  return nd.gap > 0.0 ? CaseLabel::CaseI : CaseLabel::CaseII;
}

double singularity_ratio(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::BadDimensions, "singularity_ratio: matrix not square");
  if (m.empty()) return 1.0;
  const auto svd = lapack::gesvd(m);
  return svd.s.back() / std::max(1.0, svd.s.front());
}

bool numerically_singular(const Matrix& m, double ratio) { return singularity_ratio(m) <= ratio; }

bool PropertyReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass; });
}

const PropertyCheck* PropertyReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

PropertyReport verify_properties(const Problem& p, const Solution& sol, std::span<const double> certificate,
                                 const std::optional<NullData>& nd, double tol) {
  if (!sol.psi) throw Error(ErrorCode::InvalidArgument, "verify_properties needs Psi");
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  if (certificate.size() != n + m) throw Error(ErrorCode::ShapeMismatch, "certificate must have n + m entries");
  const Matrix& phi = sol.phi;
  const Matrix& psi = *sol.psi;

  PropertyReport rep;
  const Vector c1(certificate.begin(), certificate.begin() + static_cast<std::ptrdiff_t>(n));
  const Vector c2(certificate.begin() + static_cast<std::ptrdiff_t>(n), certificate.end());
  add_le(rep, "cert.phi_v1_le_v2", phi * c1, c2, tol);
  add_le(rep, "cert.psi_v2_le_v1", psi * c2, c1, tol);

  if (nd) {
    const Vector phi_v1 = phi * nd->v1;
    const Vector psi_v2 = psi * nd->v2;
    const Vector u2_phi = left_multiply(nd->u2, phi);
    const Vector u1_psi = left_multiply(nd->u1, psi);
    add_le(rep, "null.phi_v1_le_v2", phi_v1, nd->v2, tol);
    add_le(rep, "null.psi_v2_le_v1", psi_v2, nd->v1, tol);
    add_le(rep, "null.u2_phi_le_u1", u2_phi, nd->u1, tol);
    add_le(rep, "null.u1_psi_le_u2", u1_psi, nd->u2, tol);

    const Matrix r = p.d() - p.c() * phi;
    const Matrix a_phic = p.a() - phi * p.c();
    const CaseLabel label = std::abs(nd->gap) <= kGapTol * nd->scale ? CaseLabel::CaseIII
                            : nd->gap > 0.0                          ? CaseLabel::CaseI
                                                                     : CaseLabel::CaseII;
    if (label == CaseLabel::CaseI || label == CaseLabel::CaseIII) {
      add_eq(rep, "case.phi_v1_eq_v2", phi_v1, nd->v2, tol);
      add_eq(rep, "case.u1_psi_eq_u2", u1_psi, nd->u2, tol);
    }
    if (label == CaseLabel::CaseII || label == CaseLabel::CaseIII) {
      add_eq(rep, "case.psi_v2_eq_v1", psi_v2, nd->v1, tol);
      add_eq(rep, "case.u2_phi_eq_u1", u2_phi, nd->u1, tol);
    }
    add_singular(rep, "case.r_singularity", r, label != CaseLabel::CaseII);
    add_singular(rep, "case.a_minus_phic_singularity", a_phic, label != CaseLabel::CaseI);
  }

  add_regular(rep, "i_minus_phipsi_regular", Matrix::identity(m) - phi * psi, tol);
  add_regular(rep, "i_minus_psiphi_regular", Matrix::identity(n) - psi * phi, tol);

  const EigenStructure es = zero_eigen_structure(p);
  const double scale = std::max(1.0, h_matrix(p).norm_max());
  const double match_tol = (es.r >= 2 ? std::max(tol, 1e-6) : tol) * scale;
  const std::vector<Complex> top(es.lambdas.begin(), es.lambdas.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Complex> bottom;
  for (std::size_t i = n; i < n + m; ++i) bottom.push_back(-es.lambdas[i]);
  const Matrix r = p.d() - p.c() * phi;
  const Matrix s = p.a() - p.b() * psi;
  const double dr = spectrum_distance(eigenvalues(r), top);
  const double ds = spectrum_distance(eigenvalues(s), bottom);
  rep.checks.push_back({"assign.r_top_n", dr <= match_tol, -dr});
  rep.checks.push_back({"assign.s_bottom_m", ds <= match_tol, -ds});
  double top_trace = 0.0;
  for (const Complex& l : top) top_trace += l.real();
  const double dt = std::abs(r.trace() - top_trace);
  rep.checks.push_back({"assign.trace", dt <= tol * scale, -dt});
  return rep;
}

ProbeResult conjecture_probe(const Problem& p, const Solution& sol) {
  ProbeResult out;
  const MatrixKind kind = categorize(k_matrix(p));
  out.label = classify_case(p, kind);
  if (!kind.singular || !kind.regular) {
    out.skipped = true;
    out.reason = "K is not a singular regular M-matrix";
    return out;
  }
  if (out.label != CaseLabel::CaseI && out.label != CaseLabel::CaseII) {
    out.skipped = true;
    out.reason = std::string("case ") + std::string(to_string(out.label)) + " is outside the probe";
    return out;
  }
  if (!sol.psi) {
    out.skipped = true;
    out.reason = "Psi unavailable";
    return out;
  }
  out.rho = spectral_radius(sol.phi * *sol.psi);
  out.margin = 1.0 - out.rho;
  out.candidate = out.margin <= kProbeMarginTol;
  return out;
}

SecondSolutionReport second_solution_count_check(const Problem& p) {
  SecondSolutionReport rep;
  const std::size_t n = p.n();
  const std::size_t size = n + p.m();
  if (size > 10) {
    rep.skipped = true;
    rep.reason = "n + m exceeds 10";
    return rep;
  }
  const Matrix h = h_matrix(p);
  std::vector<Complex> lambdas = eigenvalues(h);
  const double sep_tol = 1e-6 * std::max(1.0, h.norm_max());
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (std::abs(lambdas[i] - lambdas[j]) <= sep_tol) {
        rep.skipped = true;
        rep.reason = "eigenvalues of H are not all simple";
        return rep;
      }

  std::vector<bool> mask(size, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::vector<std::size_t> selection;
    for (std::size_t i = 0; i < size; ++i)
      if (mask[i]) selection.push_back(i);
    ++rep.subsets;
    Matrix x;
    try {
      x = schur_select(p, selection);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularY1 || e.code() == ErrorCode::SplitsConjugatePair ||
          e.code() == ErrorCode::ReorderFailure)
        continue;
      throw;
    }
    if (relative_residual(p, x) > 1e-8) continue;
    ++rep.graph_solutions;
    const double cut = 1e-10 * std::max(1.0, x.norm_max());
    const auto entries = x.data();
    if (std::all_of(entries.begin(), entries.end(), [cut](double v) { return v > cut; }))
      rep.positive.push_back(std::move(x));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  rep.within_bound = rep.positive.size() <= 2;
  return rep;
}

}  // namespace mare
