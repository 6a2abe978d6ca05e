#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <lapacke.h>

#include "holodisc/errors.hpp"

namespace holodisc {

/// Singular values (descending) of a matrix with few nonzero diagonals.
/// The band is detected from the nonzero pattern; the matrix is reduced to
/// bidiagonal form with a band-aware Householder sweep (?gbbrd) and the
/// bidiagonal singular values come from dqds (?bdsqr without vectors).
template <class Scalar>
Eigen::VectorXd band_singular_values(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  if (m == 0 || n == 0) return {};
  lapack_int kl = 0, ku = 0;
  for (lapack_int j = 0; j < n; ++j) {
    for (lapack_int i = 0; i < m; ++i) {
      if (a(i, j) != Scalar(0)) {
        kl = std::max(kl, i - j);
        ku = std::max(ku, j - i);
      }
    }
  }
  const lapack_int ldab = kl + ku + 1;
  std::vector<Scalar> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(n), Scalar(0));
  for (lapack_int j = 0; j < n; ++j) {
    for (lapack_int i = std::max<lapack_int>(0, j - ku); i <= std::min<lapack_int>(m - 1, j + kl); ++i) {
      ab[static_cast<std::size_t>(j * ldab + ku + i - j)] = a(i, j);
    }
  }
  const lapack_int k = std::min(m, n);
  std::vector<double> d(static_cast<std::size_t>(k)), e(static_cast<std::size_t>(std::max<lapack_int>(k - 1, 1)));
  lapack_int info = 0;
  if constexpr (std::is_same_v<Scalar, double>) {
    double dummy = 0.0;
    info = LAPACKE_dgbbrd(LAPACK_COL_MAJOR, 'N', m, n, 0, kl, ku, ab.data(), ldab, d.data(), e.data(), &dummy, 1,
                          &dummy, 1, &dummy, 1);
  } else {
    static_assert(std::is_same_v<Scalar, std::complex<double>>, "double or complex<double> only");
    lapack_complex_double dummy{};
    info = LAPACKE_zgbbrd(LAPACK_COL_MAJOR, 'N', m, n, 0, kl, ku, reinterpret_cast<lapack_complex_double*>(ab.data()),
                          ldab, d.data(), e.data(), &dummy, 1, &dummy, 1, &dummy, 1);
  }
  if (info != 0) throw NumericalError("band bidiagonalisation failed, info = " + std::to_string(info));
  double dummy = 0.0;
  info = LAPACKE_dbdsqr(LAPACK_COL_MAJOR, m >= n ? 'U' : 'L', k, 0, 0, 0, d.data(), e.data(), &dummy, 1, &dummy, 1,
                        &dummy, 1);
  if (info != 0) throw NumericalError("bidiagonal SVD failed, info = " + std::to_string(info));
  Eigen::VectorXd s(k);
  for (lapack_int i = 0; i < k; ++i) s(i) = std::abs(d[static_cast<std::size_t>(i)]);
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

/// Number of columns minus numerical rank, with rank counted against
/// rel_tol * sigma_max.
inline int kernel_dimension(const Eigen::VectorXd& singular_values, Eigen::Index cols, double rel_tol) {
  if (singular_values.size() == 0 || singular_values(0) == 0.0) return static_cast<int>(cols);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) rank += singular_values(i) > rel_tol * singular_values(0);
  return static_cast<int>(cols - rank);
}

}  // namespace holodisc
