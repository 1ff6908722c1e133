#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gqm/fidelity.hpp"
#include "gqm/observable.hpp"
#include "gqm/schemes.hpp"

namespace gqm {

/// Sampled curve (abscissa strictly increasing, finite values).
struct PrecisionCurve {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
};

/// Slope of <M> along the family at phi: symmetric finite difference with
/// one Richardson halving (default step 1e-5).
double mean_slope(const QuadraticObservable& m, const SchemeFamily& fam,
                  double phi, double step = 1e-5);

/// Phase variance Var(M)/(d<M>/dphi)^2 at the working point phi.
/// Throws std::domain_error at a vanishing-slope point (unusable working
/// point, not a numerical failure).
double error_propagation(const QuadraticObservable& m, const SchemeFamily& fam,
                         double phi);

/// Optimal-measurement observable for a pure family: assembled from the
/// finite-difference derivatives of (d, gamma), constant term omitted.
/// Rejects mixed states (symplectic eigenvalue off 1 by more than 1e-6).
QuadraticObservable sld_pure(const SchemeFamily& fam, double phi);

/// 1/Var(phi) over a phi grid at fixed observable; slope-zero points are
/// emitted as zero information.
PrecisionCurve fisher_vs_phi(const SchemeConfig& cfg,
                             const QuadraticObservable& m,
                             const std::vector<double>& phi_grid);

/// Full width at half maximum of a single-peak curve. The peak must lie
/// strictly inside the grid. Crossings are located by bisection on the
/// monotone flanks, using `eval` when provided and the linear interpolant of
/// the samples otherwise (abscissa tolerance 1e-10).
double fwhm(const PrecisionCurve& curve,
            const std::function<double(double)>& eval = nullptr);

/// For each squeezing value: photon number n of the squeezed+coherent probe
/// (alpha = sinh r) and W*n with W the width of its information peak.
std::vector<std::pair<double, double>> fwhm_scaling(
    const std::vector<double>& r_grid);

}  // namespace gqm
