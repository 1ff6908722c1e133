#pragma once

// Direct LAPACKE zheevd wrapper with an Eigen fallback. The oracle
// eigendecomposes density matrices of dimension up to a few thousand, where
// divide-and-conquer is several times faster than Eigen's QR path.

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Dense>

namespace gqm::detail {

/// Eigendecomposition of a Hermitian matrix: returns ascending eigenvalues,
/// replaces `a` by the eigenvectors (columns).
inline Eigen::VectorXd hermitian_eig_inplace(Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd w(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n,
                                  w.data());
  if (info != 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    a = es.eigenvectors();
    return es.eigenvalues();
  }
  return w;
}

}  // namespace gqm::detail
