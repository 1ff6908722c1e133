#pragma once

#include <span>
#include <string>
#include <vector>

#include "gqm/fidelity.hpp"
#include "gqm/gaussian.hpp"

namespace gqm {

enum class Scheme {
  ancilla_tmsv,
  caves,
  hybrid,
  su11_with_bs,
  su11_without_bs,
  coherent_benchmark,
};

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme s);

/// Parameters for one interferometer configuration. alpha is the coherent
/// amplitude (0 where not applicable), theta the experimenter's working-point
/// estimate used by measurement observables.
struct SchemeConfig {
  Scheme scheme = Scheme::ancilla_tmsv;
  double r = 0.0;
  double alpha = 0.0;
  double eta = 1.0;
  double theta = 0.0;

  void validate() const;
};

/// phi -> output state of the configured pipeline. The families end at the
/// loss stage: the optimal observables are defined on the arms before
/// recombination, and their published expectation values pin that choice.
SchemeFamily build_family(const SchemeConfig& cfg);

/// Mean photon number crossing the phase-shift stage for this configuration
/// (sets the photon-matched coherent benchmark).
double photons_at_phase_shift(const SchemeConfig& cfg);

/// QFI of the photon-matched coherent probe: 2 eta alpha^2.
double coherent_benchmark_qfi(double alpha, double eta);

/// Ratio J(su11 with BS)/J(su11 without BS) from the fidelity route.
double su11_factor_check(double r, double eta);

// --- closed-form expressions -------------------------------------------

/// <M_anc> on the ancilla pipeline.
double eq10_mean_manc(double r, double eta, double phi);
/// Phase variance of the M_anc measurement at working point phi.
double eq11_delta2phi(double r, double eta, double phi);
/// Minimum of eq11 over phi (attained at phi = 0).
double eq12_min_var(double r, double eta);
/// Photon-counting precision of the squeezed+coherent interferometer (lossless).
double eq14_photon_counting(double r, double alpha);
/// Lossless QFI of the squeezed+coherent interferometer.
double eq15_caves_qfi(double r, double alpha);
/// <M> of the caves observable at transmissivity eta.
double eq17_caves_mean(double r, double alpha, double eta, double phi,
                       double theta);
/// Minimum phase variance at eta = 1 (inverse of eq15).
double eq19_caves_qcr(double r, double alpha);
/// Lossless QFI of the hybrid (coherent-seeded ancilla) pipeline.
double eq20_hybrid_qfi(double r, double alpha);
/// QFI of a lossy one-mode squeezed vacuum under phase rotation.
double eq21_su11_qfi(double r, double eta);
/// <M> of the caves observable at eta = 1 (supplementary form).
double supp_caves_mean(double r, double alpha, double phi, double theta);
/// <M^2> of the caves observable at eta = 1 (supplementary form).
double supp_caves_m2(double r, double alpha, double phi, double theta);
/// Var(M) at eta = 1, assembled as <M^2> - <M>^2 from the closed forms.
double supp_caves_var(double r, double alpha, double phi, double theta);
/// Homodyne phase variance of a coherent probe: (1/2)/(alpha^2 sin^2 theta).
double coherent_homodyne_var(double alpha, double theta);

/// Dispatch by formula id (the ids above, e.g. "eq12_min_var").
double closed_form(const std::string& id, std::span<const double> params);

}  // namespace gqm
