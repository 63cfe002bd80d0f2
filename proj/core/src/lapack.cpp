#include "lapack.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "mare/error.hpp"

namespace mare::lapack {

namespace {

lapack_int as_int(std::size_t n) { return static_cast<lapack_int>(n); }

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) throw Error(ErrorCode::BadDimensions, std::string(what) + ": matrix not square");
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.all_finite()) throw Error(ErrorCode::NonFinite, std::string(what) + ": input has NaN or Inf entries");
}

void check_argument(lapack_int info, const char* routine) {
  if (info < 0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(routine) + ": illegal argument " + std::to_string(-info));
  }
}

}  // namespace

LuFactors getrf(Matrix a) {
  require_finite(a, "getrf");
  require_square(a, "getrf");
  const lapack_int n = as_int(a.rows());
  LuFactors f;
  f.pivots.resize(a.rows());
  if (n == 0) {
    f.lu = std::move(a);
    return f;
  }
  std::vector<lapack_int> ipiv(a.rows());
  const lapack_int info = LAPACKE_dgetrf(LAPACK_ROW_MAJOR, n, n, a.data().data(), n, ipiv.data());
  check_argument(info, "dgetrf");
  f.info = info;
  std::copy(ipiv.begin(), ipiv.end(), f.pivots.begin());
  double min_pivot = std::abs(a(0, 0));
  for (std::size_t i = 1; i < a.rows(); ++i) min_pivot = std::min(min_pivot, std::abs(a(i, i)));
  f.min_abs_pivot = min_pivot;
  f.lu = std::move(a);
  return f;
}

Matrix getrs(const LuFactors& f, Matrix b, bool transpose) {
  const lapack_int n = as_int(f.lu.rows());
  if (b.rows() != f.lu.rows()) throw Error(ErrorCode::ShapeMismatch, "getrs: rhs rows");
  require_finite(b, "getrs");
  if (n == 0 || b.cols() == 0) return b;
  std::vector<lapack_int> ipiv(f.pivots.begin(), f.pivots.end());
  const lapack_int info =
      LAPACKE_dgetrs(LAPACK_ROW_MAJOR, transpose ? 'T' : 'N', n, as_int(b.cols()), f.lu.data().data(), n,
                     ipiv.data(), b.data().data(), as_int(b.cols()));
  check_argument(info, "dgetrs");
  return b;
}

double gecon(const LuFactors& f, double anorm_one) {
  const lapack_int n = as_int(f.lu.rows());
  if (n == 0) return 1.0;
  if (f.info > 0) return 0.0;
  double rcond = 0.0;
  const lapack_int info =
      LAPACKE_dgecon(LAPACK_ROW_MAJOR, '1', n, f.lu.data().data(), n, anorm_one, &rcond);
  check_argument(info, "dgecon");
  return rcond;
}

std::vector<Complex> geev(Matrix a) {
  require_finite(a, "geev");
  require_square(a, "geev");
  const lapack_int n = as_int(a.rows());
  std::vector<Complex> out;
  if (n == 0) return out;
  std::vector<double> wr(a.rows()), wi(a.rows());
  const lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data().data(), n, wr.data(),
                                        wi.data(), nullptr, n, nullptr, n);
  check_argument(info, "dgeev");
  if (info > 0) throw Error(ErrorCode::NoConvergence, "QR iteration failed to converge (dgeev)");
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

RealSchur gees(Matrix a) {
  require_finite(a, "gees");
  require_square(a, "gees");
  const lapack_int n = as_int(a.rows());
  RealSchur s{Matrix(a.rows(), a.rows()), Matrix(a.rows(), a.rows())};
  if (n == 0) return s;
  std::vector<double> wr(a.rows()), wi(a.rows());
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_dgees(LAPACK_ROW_MAJOR, 'V', 'N', nullptr, n, a.data().data(), n, &sdim,
                                        wr.data(), wi.data(), s.q.data().data(), n);
  check_argument(info, "dgees");
  if (info > 0) throw Error(ErrorCode::NoConvergence, "QR iteration failed to converge (dgees)");
  s.t = std::move(a);
  return s;
}

int trexc(Matrix& t, Matrix& q, int& ifst, int& ilst) {
  const lapack_int n = as_int(t.rows());
  lapack_int first = ifst;
  lapack_int last = ilst;
  const lapack_int info =
      LAPACKE_dtrexc(LAPACK_ROW_MAJOR, 'V', n, t.data().data(), n, q.data().data(), n, &first, &last);
  check_argument(info, "dtrexc");
  ifst = first;
  ilst = last;
  return info;
}

Matrix trsyl(const Matrix& a, const Matrix& b, Matrix c, double& scale, int& info) {
  const lapack_int m = as_int(a.rows());
  const lapack_int n = as_int(b.rows());
  scale = 1.0;
  info = 0;
  if (m == 0 || n == 0) return c;
  const lapack_int rc = LAPACKE_dtrsyl(LAPACK_ROW_MAJOR, 'N', 'N', 1, m, n, a.data().data(), m,
                                       b.data().data(), n, c.data().data(), n, &scale);
  check_argument(rc, "dtrsyl");
  info = rc;
  return c;
}

Svd gesvd(Matrix a) {
  require_finite(a, "gesvd");
  const lapack_int m = as_int(a.rows());
  const lapack_int n = as_int(a.cols());
  Svd out{Vector(std::min(a.rows(), a.cols())), Matrix(a.rows(), a.rows()), Matrix(a.cols(), a.cols())};
  if (m == 0 || n == 0) return out;
  std::vector<double> superb(std::max<std::size_t>(1, std::min(a.rows(), a.cols())));
  const lapack_int info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, 'A', 'A', m, n, a.data().data(), n,
                                         out.s.data(), out.u.data().data(), m, out.vt.data().data(), n,
                                         superb.data());
  check_argument(info, "dgesvd");
  if (info > 0) throw Error(ErrorCode::NoConvergence, "SVD failed to converge (dgesvd)");
  return out;
}

}  // namespace mare::lapack
