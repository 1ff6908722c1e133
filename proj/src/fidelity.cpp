#include "gqm/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace gqm {

namespace detail {
double fidelity_mixed_quad(const Mat& gamma1, const Vec& d1, const Mat& gamma2,
                           const Vec& d2);
double fidelity_overlap_quad(const Mat& gamma1, const Vec& d1,
                             const Mat& gamma2, const Vec& d2);
}  // namespace detail

Mat matrix_sqrt_psd(const Mat& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("matrix_sqrt_psd: input not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec lam = es.eigenvalues();
  if (lam.minCoeff() < -1e-10) {
    throw std::invalid_argument("matrix_sqrt_psd: input is indefinite");
  }
  lam = lam.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("matrix_sqrt_psd: input not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Vec lam = es.eigenvalues();
  if (lam.minCoeff() < -1e-10) {
    throw std::invalid_argument("matrix_sqrt_psd: input is indefinite");
  }
  lam = lam.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
  if (a.n_modes != b.n_modes) {
    throw std::invalid_argument("fidelity: states have different mode counts");
  }
  a.check_valid();
  b.check_valid();
  if (is_pure(a) || is_pure(b)) {
    return detail::fidelity_overlap_quad(a.gamma, a.d, b.gamma, b.d);
  }
  return detail::fidelity_mixed_quad(a.gamma, a.d, b.gamma, b.d);
}

QfiEstimate qfi_fidelity(const SchemeFamily& fam, double phi, double dphi) {
  if (dphi <= 0.0) throw std::invalid_argument("qfi_fidelity: dphi must be > 0");
  const auto stencil = [&](double h) {
    double f = gaussian_fidelity(fam(phi - h / 2), fam(phi + h / 2));
    return std::pair<double, double>{8.0 * (1.0 - f) / (h * h), f};
  };
  auto [j, f] = stencil(dphi);
  auto [j_half, f_half] = stencil(dphi / 2);
  (void)f_half;
  QfiEstimate est;
  est.value = j;
  est.step = dphi;
  est.fidelity = f;
  est.value_half_step = j_half;
  return est;
}

}  // namespace gqm
