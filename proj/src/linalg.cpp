#include "isoband/linalg.hpp"

#include <algorithm>
#include <complex>
#include <string>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "isoband/error.hpp"

namespace isoband {

std::vector<double> lowest_generalized_eigenvalues(const CMatrix& H, const CMatrix& B, int count) {
  const Eigen::Index n = H.rows();
  if (H.cols() != n || (B.size() != 0 && (B.rows() != n || B.cols() != n)))
    throw Error(ErrorKind::Structural, "eigenproblem matrices must be square and of equal size");
  if (n == 0) return {};
  const int want = count <= 0 ? static_cast<int>(n) : std::min<int>(count, static_cast<int>(n));

  CMatrix C = H;
  if (B.size() != 0) {
    CMatrix L = B;
    const lapack_int ld = static_cast<lapack_int>(n);
    if (LAPACKE_zpotrf(LAPACK_COL_MAJOR, 'L', ld, L.data(), ld) != 0)
      throw Error(ErrorKind::Numerical, "weight Gram matrix is not positive definite");
    if (const lapack_int info = LAPACKE_zhegst(LAPACK_COL_MAJOR, 1, 'L', ld, C.data(), ld, L.data(), ld); info != 0)
      throw Error(ErrorKind::Numerical, "zhegst failed (info " + std::to_string(info) + ")");
  }

  std::vector<double> w(n);
  lapack_int found = 0;
  std::vector<lapack_int> isuppz(2 * n);
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'I', 'L', static_cast<lapack_int>(n),
                                         C.data(), static_cast<lapack_int>(n), 0.0, 0.0, 1, want, 0.0,
                                         &found, w.data(), nullptr, 1, isuppz.data());
  if (info != 0 || found != want)
    throw Error(ErrorKind::Numerical, "zheevr failed (info " + std::to_string(info) + ")");
  w.resize(want);
  return w;
}

std::vector<double> smallest_singular_values(const CMatrix& M, int count) {
  CMatrix A = M;
  const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
  const lapack_int k = std::min(m, n);
  std::vector<double> s(k);
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, A.data(), m, s.data(), nullptr,
                                         1, nullptr, 1);
  if (info != 0) throw Error(ErrorKind::Numerical, "zgesdd failed (info " + std::to_string(info) + ")");
  std::reverse(s.begin(), s.end());
  if (count > 0 && count < k) s.resize(count);
  return s;
}

double hermitian_defect(const CMatrix& M) {
  const double norm = M.norm();
  return norm == 0.0 ? 0.0 : (M - M.adjoint()).norm() / norm;
}

}  // namespace isoband
