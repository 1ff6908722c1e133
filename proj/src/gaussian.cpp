#include "gqm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gqm {

namespace {

void require_mode(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    throw std::out_of_range("mode index " + std::to_string(mode) +
                            " out of range for " + std::to_string(n_modes) +
                            " modes");
  }
}

}  // namespace

Mat symplectic_form(int n_modes) {
  Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  omega.topRightCorner(n_modes, n_modes) = Mat::Identity(n_modes, n_modes);
  omega.bottomLeftCorner(n_modes, n_modes) = -Mat::Identity(n_modes, n_modes);
  return omega;
}

void GaussianState::check_valid() const {
  if (d.size() != 2 * n_modes || gamma.rows() != 2 * n_modes ||
      gamma.cols() != 2 * n_modes) {
    throw std::invalid_argument("GaussianState dimension mismatch");
  }
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("covariance matrix not symmetric");
  }
  Eigen::MatrixXcd phys = gamma.cast<Cplx>();
  phys += Cplx(0.0, 1.0) * symplectic_form(n_modes).cast<Cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(phys,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("state is unphysical: gamma + i Omega has "
                                "eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

SymplecticOp operator*(const SymplecticOp& a, const SymplecticOp& b) {
  return {a.S * b.S, a.S * b.shift + a.shift};
}

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("need at least one mode");
  GaussianState s;
  s.n_modes = n_modes;
  s.d = Vec::Zero(2 * n_modes);
  s.gamma = Mat::Identity(2 * n_modes, 2 * n_modes);
  return s;
}

SymplecticOp bogoliubov_op(const Eigen::MatrixXcd& E, const Eigen::MatrixXcd& F,
                           const std::vector<int>& modes, int n_modes) {
  const int k = static_cast<int>(modes.size());
  if (E.rows() != k || E.cols() != k || F.rows() != k || F.cols() != k) {
    throw std::invalid_argument("Bogoliubov block size does not match mode list");
  }
  for (int m : modes) require_mode(m, n_modes);

  Eigen::MatrixXcd Ef = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  Eigen::MatrixXcd Ff = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      Ef(modes[i], modes[j]) = E(i, j);
      Ff(modes[i], modes[j]) = F(i, j);
    }
  }
  // x' = Re(E+F) x + Im(F-E) p ;  p' = Im(E+F) x + Re(E-F) p
  SymplecticOp op;
  op.S = Mat(2 * n_modes, 2 * n_modes);
  op.S.topLeftCorner(n_modes, n_modes) = (Ef + Ff).real();
  op.S.topRightCorner(n_modes, n_modes) = (Ff - Ef).imag();
  op.S.bottomLeftCorner(n_modes, n_modes) = (Ef + Ff).imag();
  op.S.bottomRightCorner(n_modes, n_modes) = (Ef - Ff).real();
  op.shift = Vec::Zero(2 * n_modes);

  const Mat omega = symplectic_form(n_modes);
  if ((op.S * omega * op.S.transpose() - omega).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Bogoliubov block is not symplectic");
  }
  return op;
}

SymplecticOp phase_shifter(double phi, int mode, int n_modes) {
  require_mode(mode, n_modes);
  Eigen::MatrixXcd E(1, 1), F = Eigen::MatrixXcd::Zero(1, 1);
  E(0, 0) = std::exp(Cplx(0.0, -phi));
  return bogoliubov_op(E, F, {mode}, n_modes);
}

SymplecticOp beamsplitter_5050(int mode_a, int mode_b, int n_modes) {
  require_mode(mode_a, n_modes);
  require_mode(mode_b, n_modes);
  if (mode_a == mode_b) {
    throw std::invalid_argument("beamsplitter needs two distinct modes");
  }
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd E(2, 2), F = Eigen::MatrixXcd::Zero(2, 2);
  E << s, s, -s, s;
  return bogoliubov_op(E, F, {mode_a, mode_b}, n_modes);
}

SymplecticOp one_mode_squeezer(double r, int mode, int n_modes) {
  require_mode(mode, n_modes);
  Eigen::MatrixXcd E(1, 1), F(1, 1);
  E(0, 0) = std::cosh(r);
  F(0, 0) = -std::sinh(r);
  return bogoliubov_op(E, F, {mode}, n_modes);
}

SymplecticOp two_mode_squeezer(double r, int mode_a, int mode_b, int n_modes) {
  require_mode(mode_a, n_modes);
  require_mode(mode_b, n_modes);
  if (mode_a == mode_b) {
    throw std::invalid_argument("two-mode squeezer needs distinct modes");
  }
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(2, 2);
  E(0, 0) = E(1, 1) = std::cosh(r);
  F(0, 1) = F(1, 0) = -std::sinh(r);
  return bogoliubov_op(E, F, {mode_a, mode_b}, n_modes);
}

SymplecticOp displacement(Cplx alpha, int mode, int n_modes) {
  require_mode(mode, n_modes);
  SymplecticOp op;
  op.S = Mat::Identity(2 * n_modes, 2 * n_modes);
  op.shift = Vec::Zero(2 * n_modes);
  op.shift(mode) = std::sqrt(2.0) * alpha.real();
  op.shift(mode + n_modes) = std::sqrt(2.0) * alpha.imag();
  return op;
}

GaussianState apply(const SymplecticOp& op, const GaussianState& state) {
  if (op.n_modes() != state.n_modes) {
    throw std::invalid_argument("operation and state mode counts differ");
  }
  GaussianState out;
  out.n_modes = state.n_modes;
  out.d = op.S * state.d + op.shift;
  out.gamma = op.S * state.gamma * op.S.transpose();
  return out;
}

GaussianState apply_loss(const LossChannel& ch, const GaussianState& state) {
  if (ch.eta < 0.0 || ch.eta > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  for (int m : ch.modes) require_mode(m, state.n_modes);

  const int n = state.n_modes;
  Vec x = Vec::Ones(2 * n);
  const double root_eta = std::sqrt(ch.eta);
  for (int m : ch.modes) {
    x(m) = root_eta;
    x(m + n) = root_eta;
  }
  GaussianState out;
  out.n_modes = n;
  out.d = x.cwiseProduct(state.d);
  out.gamma = x.asDiagonal() * state.gamma * x.asDiagonal();
  out.gamma += (Vec::Ones(2 * n) - x.cwiseProduct(x)).asDiagonal().toDenseMatrix();
  return out;
}

double mean_photon(const GaussianState& state, const std::vector<int>& modes) {
  std::vector<int> ms = modes;
  if (ms.empty()) {
    ms.resize(state.n_modes);
    for (int m = 0; m < state.n_modes; ++m) ms[m] = m;
  }
  const int n = state.n_modes;
  double total = 0.0;
  for (int m : ms) {
    require_mode(m, n);
    total += (state.gamma(m, m) + state.gamma(m + n, m + n) - 2.0) / 4.0;
    total += (state.d(m) * state.d(m) + state.d(m + n) * state.d(m + n)) / 2.0;
  }
  return total;
}

GaussianState reduce(const GaussianState& state, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("cannot reduce to zero modes");
  const int n = state.n_modes;
  const int k = static_cast<int>(keep.size());
  std::vector<int> idx;
  idx.reserve(2 * k);
  for (int m : keep) {
    require_mode(m, n);
    idx.push_back(m);
  }
  for (int m : keep) idx.push_back(m + n);

  GaussianState out;
  out.n_modes = k;
  out.d = Vec(2 * k);
  out.gamma = Mat(2 * k, 2 * k);
  for (int i = 0; i < 2 * k; ++i) {
    out.d(i) = state.d(idx[i]);
    for (int j = 0; j < 2 * k; ++j) out.gamma(i, j) = state.gamma(idx[i], idx[j]);
  }
  return out;
}

Vec symplectic_eigenvalues(const Mat& gamma) {
  const int n = static_cast<int>(gamma.rows()) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> es(gamma);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("covariance matrix is not PSD");
  }
  Vec lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Mat root = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  // gamma^{1/2} Omega gamma^{1/2} is antisymmetric; its singular values are
  // the symplectic eigenvalues, each twice.
  Mat m = root * symplectic_form(n) * root;
  Eigen::JacobiSVD<Mat> svd(m);
  Vec s = svd.singularValues();  // descending, paired
  Vec nu(n);
  for (int k = 0; k < n; ++k) nu(k) = s(2 * k);
  std::sort(nu.data(), nu.data() + n);
  return nu;
}

bool is_pure(const GaussianState& state, double tol) {
  return std::abs(state.gamma.determinant() - 1.0) < tol;
}

}  // namespace gqm
