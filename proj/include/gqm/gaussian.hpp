#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gqm {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Cplx = std::complex<double>;

/// Symplectic form in xxpp ordering: Omega = [[0, I], [-I, 0]].
Mat symplectic_form(int n_modes);

/// Multimode Gaussian state: quadrature means d (length 2n, ordering
/// x_0..x_{n-1}, p_0..p_{n-1}) and covariance gamma normalized so that
/// the vacuum has gamma = identity. Quadratures are x = (b + b^dag)/sqrt(2),
/// p = -i(b - b^dag)/sqrt(2). Modes are indexed from 0.
struct GaussianState {
  int n_modes = 0;
  Vec d;
  Mat gamma;

  /// Throws if gamma is not symmetric or gamma + i*Omega is not PSD
  /// (smallest eigenvalue below -1e-10).
  void check_valid() const;
};

/// Linear phase-space map: state transforms as d -> S d + shift,
/// gamma -> S gamma S^T. S must satisfy S Omega S^T = Omega.
struct SymplecticOp {
  Mat S;
  Vec shift;

  int n_modes() const { return static_cast<int>(S.rows()) / 2; }
  /// Composition: (a * b) acts as b first, then a.
  friend SymplecticOp operator*(const SymplecticOp& a, const SymplecticOp& b);
};

/// Pure-loss channel with transmissivity eta acting on a subset of modes.
struct LossChannel {
  double eta = 1.0;
  std::vector<int> modes;
};

GaussianState vacuum(int n_modes);

/// Quadrature rotation implementing b^dag -> b^dag e^{i phi} on one mode.
SymplecticOp phase_shifter(double phi, int mode, int n_modes);

/// Balanced beamsplitter: b_a -> (b_a + b_b)/sqrt(2), b_b -> (b_b - b_a)/sqrt(2).
/// Port order matters; swapping the arguments flips the relative sign.
SymplecticOp beamsplitter_5050(int mode_a, int mode_b, int n_modes);

/// exp(r(a^2 - a^dag^2)/2): maps x -> e^{-r} x, p -> e^{+r} p.
SymplecticOp one_mode_squeezer(double r, int mode, int n_modes);

/// exp(r(a_1 a_2 - a_1^dag a_2^dag)) on the mode pair.
SymplecticOp two_mode_squeezer(double r, int mode_a, int mode_b, int n_modes);

/// Displacement by complex amplitude alpha: adds (sqrt(2) Re a, sqrt(2) Im a).
SymplecticOp displacement(Cplx alpha, int mode, int n_modes);

/// General Bogoliubov map b_i -> sum_j E_ij b_j + F_ij b_j^dag given on a
/// subset of modes, embedded into an n-mode identity.
SymplecticOp bogoliubov_op(const Eigen::MatrixXcd& E, const Eigen::MatrixXcd& F,
                           const std::vector<int>& modes, int n_modes);

GaussianState apply(const SymplecticOp& op, const GaussianState& state);
GaussianState apply_loss(const LossChannel& ch, const GaussianState& state);

/// Mean photon number summed over the given modes (all modes if empty).
double mean_photon(const GaussianState& state, const std::vector<int>& modes = {});

/// Partial trace down to the kept modes.
GaussianState reduce(const GaussianState& state, const std::vector<int>& keep);

/// Symplectic spectrum of gamma, ascending; all ones for a pure state.
Vec symplectic_eigenvalues(const Mat& gamma);

/// det(gamma) == 1 within tol. Assumes a physical state.
bool is_pure(const GaussianState& state, double tol = 1e-9);

}  // namespace gqm
