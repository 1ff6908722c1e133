#include "gqm/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace gqm {

Scheme scheme_from_string(const std::string& name) {
  if (name == "ancilla_tmsv") return Scheme::ancilla_tmsv;
  if (name == "caves") return Scheme::caves;
  if (name == "hybrid") return Scheme::hybrid;
  if (name == "su11_with_bs") return Scheme::su11_with_bs;
  if (name == "su11_without_bs") return Scheme::su11_without_bs;
  if (name == "coherent_benchmark") return Scheme::coherent_benchmark;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::ancilla_tmsv: return "ancilla_tmsv";
    case Scheme::caves: return "caves";
    case Scheme::hybrid: return "hybrid";
    case Scheme::su11_with_bs: return "su11_with_bs";
    case Scheme::su11_without_bs: return "su11_without_bs";
    case Scheme::coherent_benchmark: return "coherent_benchmark";
  }
  throw std::invalid_argument("unknown scheme enum value");
}

void SchemeConfig::validate() const {
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("eta must lie in [0, 1]");
  }
  if (r < 0.0) throw std::invalid_argument("squeezing r must be >= 0");
  if (alpha < 0.0) {
    throw std::invalid_argument("alpha must be >= 0 (global phases absorbed)");
  }
}

SchemeFamily build_family(const SchemeConfig& cfg) {
  cfg.validate();
  const double r = cfg.r;
  const double alpha = cfg.alpha;
  const double eta = cfg.eta;

  SchemeFamily fam;
  fam.label = to_string(cfg.scheme);
  switch (cfg.scheme) {
    case Scheme::ancilla_tmsv:
      // TMSV on (0,1); mode 1 feeds the interferometer, mode 2 is the other
      // port; the ancilla mode 0 stays lossless.
      fam.builder = [r, eta](double phi) {
        GaussianState s = vacuum(3);
        s = apply(two_mode_squeezer(r, 0, 1, 3), s);
        s = apply(beamsplitter_5050(2, 1, 3), s);
        s = apply(phase_shifter(phi, 2, 3), s);
        s = apply_loss({eta, {1, 2}}, s);
        return s;
      };
      break;
    case Scheme::hybrid:
      // same pipeline with the empty port seeded by |alpha>
      fam.builder = [r, alpha, eta](double phi) {
        GaussianState s = vacuum(3);
        s = apply(two_mode_squeezer(r, 0, 1, 3), s);
        s = apply(displacement(alpha, 2, 3), s);
        s = apply(beamsplitter_5050(2, 1, 3), s);
        s = apply(phase_shifter(phi, 2, 3), s);
        s = apply_loss({eta, {1, 2}}, s);
        return s;
      };
      break;
    case Scheme::caves:
      fam.builder = [r, alpha, eta](double phi) {
        GaussianState s = vacuum(2);
        s = apply(one_mode_squeezer(-r, 0, 2), s);
        s = apply(displacement(alpha, 1, 2), s);
        s = apply(beamsplitter_5050(0, 1, 2), s);
        s = apply(phase_shifter(phi, 1, 2), s);
        s = apply_loss({eta, {0, 1}}, s);
        return s;
      };
      break;
    case Scheme::su11_with_bs:
      fam.builder = [r, eta](double phi) {
        GaussianState s = vacuum(2);
        s = apply(two_mode_squeezer(r, 0, 1, 2), s);
        s = apply(beamsplitter_5050(0, 1, 2), s);
        s = apply(phase_shifter(phi, 1, 2), s);
        s = apply_loss({eta, {0, 1}}, s);
        return s;
      };
      break;
    case Scheme::su11_without_bs:
      fam.builder = [r, eta](double phi) {
        GaussianState s = vacuum(2);
        s = apply(two_mode_squeezer(r, 0, 1, 2), s);
        s = apply(phase_shifter(phi, 1, 2), s);
        s = apply_loss({eta, {0, 1}}, s);
        return s;
      };
      break;
    case Scheme::coherent_benchmark:
      fam.builder = [alpha, eta](double phi) {
        GaussianState s = vacuum(2);
        s = apply(displacement(alpha, 0, 2), s);
        s = apply(beamsplitter_5050(0, 1, 2), s);
        s = apply(phase_shifter(phi, 1, 2), s);
        s = apply_loss({eta, {0, 1}}, s);
        return s;
      };
      break;
  }
  return fam;
}

double photons_at_phase_shift(const SchemeConfig& cfg) {
  const double sh2 = std::sinh(cfg.r) * std::sinh(cfg.r);
  switch (cfg.scheme) {
    case Scheme::ancilla_tmsv: return sh2;
    case Scheme::hybrid: return sh2 + cfg.alpha * cfg.alpha;
    case Scheme::caves: return sh2 + cfg.alpha * cfg.alpha;
    case Scheme::su11_with_bs:
    case Scheme::su11_without_bs: return 2.0 * sh2;
    case Scheme::coherent_benchmark: return cfg.alpha * cfg.alpha;
  }
  throw std::invalid_argument("unknown scheme enum value");
}

double coherent_benchmark_qfi(double alpha, double eta) {
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("eta must lie in [0, 1]");
  }
  return 2.0 * eta * alpha * alpha;
}

double su11_factor_check(double r, double eta) {
  SchemeConfig with{Scheme::su11_with_bs, r, 0.0, eta, 0.0};
  SchemeConfig without{Scheme::su11_without_bs, r, 0.0, eta, 0.0};
  const double a = qfi_fidelity(build_family(with), 0.0).value;
  const double b = qfi_fidelity(build_family(without), 0.0).value;
  return a / b;
}

// --- closed forms --------------------------------------------------------

double eq10_mean_manc(double r, double eta, double phi) {
  return 0.25 * eta * std::sinh(r) * std::sinh(r) * std::sin(phi) *
         (-eta + (eta - 2.0) * std::cosh(2.0 * r) - 2.0);
}

double eq11_delta2phi(double r, double eta, double phi) {
  // printed with "theta" in the cos^2 factor; the pipeline is theta-free and
  // the expression reproduces the engine only with theta read as phi.
  const double c2p = std::cos(2.0 * phi);
  const double ch2 = std::cosh(2.0 * r);
  const double ch4 = std::cosh(4.0 * r);
  const double sp2 = std::sin(phi) * std::sin(phi);
  const double x = -3.0 * eta * eta * c2p + 3.0 * eta * eta - 2.0 * eta * c2p -
                   6.0 * eta +
                   4.0 * ch2 * (eta * eta * c2p - eta * eta + 2.0 * eta - 2.0) +
                   2.0 * (eta - 2.0) * eta * ch4 * sp2 - 8.0;
  const double cos2 = std::cos(phi) * std::cos(phi);
  const double bracket = -eta + (eta - 2.0) * std::cosh(2.0 * r) - 2.0;
  return x / (8.0 * eta * std::sinh(r) * std::sinh(r) * cos2 * bracket);
}

double eq12_min_var(double r, double eta) {
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double ch2 = std::cosh(2.0 * r);
  return (eta + (1.0 - eta) * ch2 + 1.0) /
         (eta * sh2 * (eta + (2.0 - eta) * ch2 + 2.0));
}

double eq14_photon_counting(double r, double alpha) {
  return alpha * alpha * std::exp(2.0 * r) + std::sinh(r) * std::sinh(r);
}

double eq15_caves_qfi(double r, double alpha) {
  return alpha * alpha + alpha * alpha * std::exp(2.0 * r) +
         std::cosh(4.0 * r) / 4.0 + std::cosh(2.0 * r) / 2.0 - 0.75;
}

double eq17_caves_mean(double r, double alpha, double eta, double phi,
                       double theta) {
  const double se = std::sqrt(eta);
  const double a2 = alpha * alpha;
  const double e2 = std::exp(2.0 * r), e4 = std::exp(4.0 * r);
  const double bracket =
      se * (e4 - 1.0) * (4.0 * a2 * e2 + e4 - 1.0) * std::cos(phi - theta) +
      2.0 * e2 * ((2.0 * a2 + 1.0) * se + e4 * (2.0 * a2 + se) -
                  2.0 * e2 * (a2 * (se - 3.0) + se));
  return 0.125 * se * std::exp(-4.0 * r) * std::sin(phi - theta) * bracket;
}

double eq19_caves_qcr(double r, double alpha) {
  return 1.0 / eq15_caves_qfi(r, alpha);
}

double eq20_hybrid_qfi(double r, double alpha) {
  return 0.5 * (4.0 * alpha * alpha * std::cosh(r) * std::cosh(r) +
                std::sinh(r) * std::sinh(r) * (std::cosh(2.0 * r) + 3.0));
}

double eq21_su11_qfi(double r, double eta) {
  const double d = eta * std::cosh(2.0 * r) + (1.0 - eta);
  const double e = -eta * std::sinh(2.0 * r);
  return 4.0 * e * e / (1.0 + d * d - e * e);
}

namespace {

long double supp_mean_ld(double r, double alpha, double phi, double theta) {
  const long double a2 = static_cast<long double>(alpha) * alpha;
  const long double e2 = std::exp(2.0L * r), e4 = std::exp(4.0L * r);
  return 0.125L * std::exp(-4.0L * r) *
         std::sin(static_cast<long double>(theta) - phi) *
         ((e4 - 1.0L) * (4.0L * a2 * e2 + e4 - 1.0L) *
              std::cos(static_cast<long double>(theta) - phi) +
          2.0L * e2 *
              (2.0L * a2 + (2.0L * a2 + 1.0L) * e4 + (4.0L * a2 - 2.0L) * e2 +
               1.0L));
}

// the expression cancels several orders of magnitude at large squeezing
long double supp_m2_ld(double r, double alpha, double phi, double theta) {
  const long double a2 = static_cast<long double>(alpha) * alpha;
  const long double a4 = a2 * a2;
  const long double p = static_cast<long double>(theta) - phi;
  const long double c1 = std::cos(p), c2 = std::cos(2.0L * p),
                    c3 = std::cos(3.0L * p), c4 = std::cos(4.0L * p);
  const auto e = [r](long double k) { return std::exp(k * r); };
  long double t = 0.0L;
  t += 80 * e(4) * a4 + 256 * e(6) * a4 + 352 * e(8) * a4 + 256 * e(10) * a4 +
       80 * e(12) * a4;
  t += (64 * e(4) + 128 * e(6) - 128 * e(10) - 64 * e(12)) * c3 * a4;
  t += (-16 * e(4) + 32 * e(8) - 16 * e(12)) * c4 * a4;
  t += 24 * e(2) * a2 + 208 * e(4) * a2 + 280 * e(6) * a2 + 64 * e(8) * a2 +
       168 * e(10) * a2 + 240 * e(12) * a2 + 40 * e(14) * a2;
  t += (-48 * e(2) - 144 * e(6) + 192 * e(8) + 240 * e(10) - 192 * e(12) -
        48 * e(14)) *
       c3 * a2;
  t += (24 * e(2) - 72 * e(6) + 72 * e(10) - 24 * e(14)) * c4 * a2;
  t += 12 * e(2) + 60 * e(4) - 12 * e(6) - 126 * e(8) - 12 * e(10) +
       60 * e(12) + 12 * e(14) + 3 * e(16);
  t += 8 * e(2) * (-1.0L + e(4)) *
       (8 * e(4) * (2 * a2 + 1) * a2 + 2 * a2 + e(8) * (6 * a2 + 1) +
        e(6) * (8 * a4 + 24 * a2 - 2) + e(2) * (8 * a4 + 24 * a2 + 2) - 1) *
       c1;
  t += -4 * e(2) *
       (-4 * a2 + e(12) * (4 * a2 - 1) + 2 * e(2) * (8 * a4 + 2 * a2 + 5) +
        2 * e(10) * (8 * a4 + 30 * a2 + 5) + e(4) * (64 * a4 + 4 * a2 - 31) +
        e(8) * (64 * a4 - 4 * a2 - 31) + e(6) * (96 * a4 - 64 * a2 + 44) - 1) *
       c2;
  t += (-24 * e(2) + 48 * e(4) + 24 * e(6) - 96 * e(8) + 24 * e(10) +
        48 * e(12) - 24 * e(14)) *
       c3;
  t += (12 * e(4) - 18 * e(8) + 12 * e(12) - 3 * e(16) - 3) * c4 + 3;
  return std::exp(-8.0L * r) * t / 512.0L;
}

}  // namespace

double supp_caves_mean(double r, double alpha, double phi, double theta) {
  return static_cast<double>(supp_mean_ld(r, alpha, phi, theta));
}

double supp_caves_m2(double r, double alpha, double phi, double theta) {
  return static_cast<double>(supp_m2_ld(r, alpha, phi, theta));
}

double supp_caves_var(double r, double alpha, double phi, double theta) {
  const long double mean = supp_mean_ld(r, alpha, phi, theta);
  return static_cast<double>(supp_m2_ld(r, alpha, phi, theta) - mean * mean);
}

double coherent_homodyne_var(double alpha, double theta) {
  const double s = std::sin(theta);
  if (alpha == 0.0 || s == 0.0) {
    throw std::domain_error("homodyne variance diverges at sin(theta) = 0");
  }
  return 0.5 / (alpha * alpha * s * s);
}

double closed_form(const std::string& id, std::span<const double> p) {
  const auto need = [&](size_t k) {
    if (p.size() != k) {
      throw std::invalid_argument("closed_form '" + id + "' expects " +
                                  std::to_string(k) + " parameters");
    }
  };
  if (id == "eq10_mean_manc") { need(3); return eq10_mean_manc(p[0], p[1], p[2]); }
  if (id == "eq11_delta2phi") { need(3); return eq11_delta2phi(p[0], p[1], p[2]); }
  if (id == "eq12_min_var") { need(2); return eq12_min_var(p[0], p[1]); }
  if (id == "eq14_photon_counting") { need(2); return eq14_photon_counting(p[0], p[1]); }
  if (id == "eq15_caves_qfi") { need(2); return eq15_caves_qfi(p[0], p[1]); }
  if (id == "eq17_caves_mean") { need(5); return eq17_caves_mean(p[0], p[1], p[2], p[3], p[4]); }
  if (id == "eq19_caves_qcr") { need(2); return eq19_caves_qcr(p[0], p[1]); }
  if (id == "eq20_hybrid_qfi") { need(2); return eq20_hybrid_qfi(p[0], p[1]); }
  if (id == "eq21_su11_qfi") { need(2); return eq21_su11_qfi(p[0], p[1]); }
  if (id == "supp_caves_mean") { need(4); return supp_caves_mean(p[0], p[1], p[2], p[3]); }
  if (id == "supp_caves_m2") { need(4); return supp_caves_m2(p[0], p[1], p[2], p[3]); }
  if (id == "supp_caves_var") { need(4); return supp_caves_var(p[0], p[1], p[2], p[3]); }
  if (id == "coherent_homodyne_var") { need(2); return coherent_homodyne_var(p[0], p[1]); }
  throw std::invalid_argument("unknown closed form id: " + id);
}

}  // namespace gqm
