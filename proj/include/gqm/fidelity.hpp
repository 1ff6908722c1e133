#pragma once

#include <functional>
#include <string>

#include "gqm/gaussian.hpp"

namespace gqm {

/// Parametrized state-preparation recipe phi -> GaussianState. The builder
/// must be deterministic and produce physical states for every phi.
struct SchemeFamily {
  std::string label;
  std::function<GaussianState(double)> builder;

  GaussianState operator()(double phi) const { return builder(phi); }
};

/// Principal square root of a symmetric PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything lower (or an asymmetric input)
/// is rejected.
Mat matrix_sqrt_psd(const Mat& m);

/// Same for a complex Hermitian PSD matrix.
Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m);

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho_a) rho_b sqrt(rho_a)) between two
/// Gaussian states. Pure-vs-anything reduces to the Gaussian overlap
/// sqrt(Tr[rho_a rho_b]); the mixed-mixed case evaluates the auxiliary-matrix
/// closed form in extended precision (the expression has a branch point for
/// nearly pure modes that double precision cannot cross accurately).
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

struct QfiEstimate {
  double value = 0.0;        ///< 8 (1 - F) / dphi^2 at the requested step
  double step = 0.0;
  double fidelity = 1.0;     ///< F at the stencil pair
  double value_half_step = 0.0;  ///< re-evaluation at dphi/2 (convergence check)
};

/// Fisher information of the family at phi from state distinguishability,
/// symmetric stencil builder(phi -/+ dphi/2).
QfiEstimate qfi_fidelity(const SchemeFamily& fam, double phi, double dphi = 1e-3);

}  // namespace gqm
