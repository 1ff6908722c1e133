#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gqm/ladder.hpp"
#include "gqm/schemes.hpp"

namespace gqm::fock {

using Cplx = std::complex<double>;

/// Truncated annihilation operator on one mode (cutoff levels 0..cutoff-1).
Eigen::MatrixXcd annihilation_op(int cutoff);

/// Dense operator on a truncated multimode space.
struct FockOperator {
  int cutoff = 0;
  int modes = 0;
  Eigen::MatrixXcd data;  // dimension cutoff^modes
};

/// Ladder polynomial as a dense matrix on cutoff^modes.
FockOperator ladder_matrix(const LadderPoly& poly, int cutoff);

/// Truncated density matrix plus the truncation diagnostic.
struct FockState {
  Eigen::MatrixXcd rho;
  int cutoff = 0;
  int modes = 0;
  double tail_mass = 0.0;  // population in any mode's top two levels
};

/// Pure-state register with uniform per-mode cutoff. Loss is realized by
/// appending a vacuum environment mode and coupling through a beamsplitter,
/// so the register stays pure; environment modes are traced out only when a
/// density matrix is requested.
class FockRegister {
 public:
  FockRegister(int n_system_modes, int cutoff);

  int cutoff() const { return cutoff_; }
  int system_modes() const { return n_sys_; }
  int total_modes() const { return n_total_; }
  const Eigen::VectorXcd& data() const { return psi_; }

  /// u acts on one mode (cutoff x cutoff).
  void apply_one_mode(const Eigen::MatrixXcd& u, int mode);
  /// u acts on the ordered pair (mode_a, mode_b); row index n_a*cutoff + n_b.
  void apply_two_mode(const Eigen::MatrixXcd& u, int mode_a, int mode_b);
  /// Pure-loss channel via beamsplitter dilation to a fresh vacuum mode.
  void apply_loss(double eta, int mode);

  /// Population in the top two levels, summed over all modes.
  double tail_mass() const;

  /// Density matrix of the system modes (environment traced out).
  Eigen::MatrixXcd system_density() const;

  /// <P> for a ladder polynomial supported on the system modes.
  Cplx expect(const LadderPoly& poly) const;
  /// (mean, variance) of a Hermitian ladder polynomial.
  std::pair<double, double> moments(const LadderPoly& poly) const;

  /// Quadrature means and covariance of the system modes (xxpp ordering,
  /// vacuum-normalized), for cross-validation against the Gaussian engine.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> quadrature_moments() const;

 private:
  Eigen::VectorXcd apply_poly(const LadderPoly& poly) const;
  Eigen::VectorXcd apply_factor(const Eigen::VectorXcd& v,
                                const LadderFactor& f) const;

  int cutoff_ = 0;
  int n_sys_ = 0;
  int n_total_ = 0;
  Eigen::VectorXcd psi_;
};

// Exact single- and two-mode unitaries from the quadratic generators
// (diagonalization of the Hermitian i*K, results cached per parameter set).
Eigen::MatrixXcd u_phase(double phi, int cutoff);
Eigen::MatrixXcd u_displacement(Cplx alpha, int cutoff);
Eigen::MatrixXcd u_one_mode_squeezer(double r, int cutoff);
Eigen::MatrixXcd u_two_mode_squeezer(double r, int cutoff);
/// b_a -> sqrt(t) b_a + sqrt(1-t) b_b; t = 1/2 is the balanced splitter.
Eigen::MatrixXcd u_beamsplitter(double transmissivity, int cutoff);

/// Stage the configured pipeline on a register at the given phase.
FockRegister oracle_register(const SchemeConfig& cfg, double phi, int cutoff);

/// Pipeline density matrix. Throws if the truncation tail exceeds the
/// threshold.
FockState oracle_build(const SchemeConfig& cfg, double phi, int cutoff,
                       double tail_threshold = 1e-8);

/// Fisher information from the eigendecomposition of rho with a symmetric
/// finite-difference derivative.
double oracle_qfi(const SchemeConfig& cfg, double phi, double dphi, int cutoff,
                  double tail_threshold = 1e-8);

double oracle_fidelity(const FockState& a, const FockState& b);

/// (mean, variance) of a Hermitian ladder polynomial on a density matrix.
std::pair<double, double> oracle_moments(const LadderPoly& poly,
                                         const FockState& s);

}  // namespace gqm::fock
