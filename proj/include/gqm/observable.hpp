#pragma once

#include "gqm/gaussian.hpp"
#include "gqm/ladder.hpp"

namespace gqm {

/// Hermitian quadratic observable M = c + l.R + R^T A R with R the quadrature
/// vector (xxpp ordering) and A real symmetric.
struct QuadraticObservable {
  int n_modes = 0;
  double c = 0.0;
  Vec l;
  Mat A;

  static QuadraticObservable zero(int n_modes);
  QuadraticObservable scaled(double s) const;
};

/// Exact conversion of a Hermitian ladder polynomial into quadrature form.
/// Reordering constants from R_i R_j = sym + i/2 Omega_ij are folded into c.
/// Throws if the polynomial is not Hermitian (imaginary residue > 1e-10).
QuadraticObservable ladder_to_quadratic(const LadderPoly& poly);

/// <M> = c + l.d + d.A d + Tr[A gamma]/2.
double expectation(const QuadraticObservable& m, const GaussianState& s);

/// Gaussian fourth-moment variance:
///   Var = (1/2) l'.gamma l' + (1/2)(Tr[A gamma A gamma] + Tr[A Omega A Omega])
/// with l' = l + 2 A d. The Omega trace carries the commutator corrections.
double variance(const QuadraticObservable& m, const GaussianState& s);

/// Ancilla-scheme observable
///   i sqrt(eta) cosh(r) sinh(r) (b_0 b_2 - b_0^d b_2^d)/sqrt(2)
/// + i eta sinh^2(r) (b_2 b_1^d - b_1 b_2^d)/2            (3 modes).
QuadraticObservable build_m_anc(double r, double eta);

/// Optimal lossless measurement for the squeezed+coherent interferometer,
/// parametrized by the working-point estimate theta (2 modes, constant term
/// dropped).
QuadraticObservable build_m_caves(double r, double alpha, double theta);

/// i(b_1^d^2 - b_1^2) on 2 modes.
QuadraticObservable build_m1();

/// i(b_0^d b_1^d - b_0 b_1) on 2 modes.
QuadraticObservable build_m12();

/// Single-quadrature (homodyne) observable x_mode.
QuadraticObservable position_observable(int mode, int n_modes);

}  // namespace gqm
