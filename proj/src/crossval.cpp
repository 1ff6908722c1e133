#include "gqm/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "gqm/estimation.hpp"
#include "gqm/fock.hpp"
#include "gqm/observable.hpp"
#include "gqm/schemes.hpp"

namespace gqm {

namespace {

int g_cutoff_cap = 0;

int capped(int cutoff) {
  return g_cutoff_cap > 0 ? std::min(cutoff, g_cutoff_cap) : cutoff;
}

struct Collector {
  std::vector<CheckResult> results;

  void absolute(const std::string& name, double got, double want, double tol) {
    const double dev = std::abs(got - want);
    results.push_back({name, dev, tol, false, dev < tol});
  }
  void relative(const std::string& name, double got, double want, double tol) {
    const double dev = std::abs(got - want) / std::abs(want);
    results.push_back({name, dev, tol, true, dev < tol});
  }
};

// Gaussian-engine moments vs the register for one circuit.
void check_builder(Collector& col, const std::string& name,
                   const GaussianState& gauss, const fock::FockRegister& reg,
                   double tol = 1e-8) {
  const auto [d, gamma] = reg.quadrature_moments();
  const double dev_d = (d - gauss.d).cwiseAbs().maxCoeff();
  const double dev_g = (gamma - gauss.gamma).cwiseAbs().maxCoeff();
  col.absolute(name + " means", dev_d, 0.0, tol);
  col.absolute(name + " covariance", dev_g, 0.0, tol);
}

void builder_checks(Collector& col, CheckTier tier) {
  using namespace fock;
  const auto cc = [](int c) { return capped(c); };
  {  // two-mode squeezed vacuum
    const double r = 0.5;
    const int c = cc(40);
    FockRegister reg(2, c);
    reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
    GaussianState s = apply(two_mode_squeezer(r, 0, 1, 2), vacuum(2));
    check_builder(col, "tmsv r=0.5 c=40", s, reg);
  }
  if (tier == CheckTier::full) {  // the r <= 1, |alpha| <= 2, cutoff 60 corner
    const double r = 1.0;
    const int c = cc(60);
    FockRegister reg(2, c);
    reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
    GaussianState s = apply(two_mode_squeezer(r, 0, 1, 2), vacuum(2));
    check_builder(col, "tmsv r=1.0 c=60", s, reg);

    FockRegister regd(1, cc(60));
    regd.apply_one_mode(u_displacement(2.0, regd.cutoff()), 0);
    check_builder(col, "coherent alpha=2 c=60",
                  apply(displacement(2.0, 0, 1), vacuum(1)), regd);
  }
  {  // one-mode squeezer pair tails decay slowly: needs the tall cutoff
    const double r = 0.8;
    const int c = cc(60);
    FockRegister reg(1, c);
    reg.apply_one_mode(u_one_mode_squeezer(r, c), 0);
    check_builder(col, "omsv r=0.8 c=60",
                  apply(one_mode_squeezer(r, 0, 1), vacuum(1)), reg);
  }
  if (tier == CheckTier::full) {
    const double r = 1.0;
    const int c = cc(84);
    FockRegister reg(1, c);
    reg.apply_one_mode(u_one_mode_squeezer(r, c), 0);
    check_builder(col, "omsv r=1.0 c=84",
                  apply(one_mode_squeezer(r, 0, 1), vacuum(1)), reg);
  }
  {  // balanced splitter on coherent x vacuum
    const int c = cc(25);
    FockRegister reg(2, c);
    reg.apply_one_mode(u_displacement(1.2, c), 0);
    reg.apply_two_mode(u_beamsplitter(0.5, c), 0, 1);
    GaussianState s = vacuum(2);
    s = apply(displacement(1.2, 0, 2), s);
    s = apply(beamsplitter_5050(0, 1, 2), s);
    check_builder(col, "bs coherent c=25", s, reg);
  }
  {  // phase-shifter sign convention
    const int c = cc(25);
    FockRegister reg(1, c);
    reg.apply_one_mode(u_displacement(1.0, c), 0);
    reg.apply_one_mode(u_phase(0.7, c), 0);
    GaussianState s = vacuum(1);
    s = apply(displacement(1.0, 0, 1), s);
    s = apply(phase_shifter(0.7, 0, 1), s);
    check_builder(col, "phase on coherent c=25", s, reg);
  }
  {  // loss on coherent (dilation vs direct map)
    const int c = cc(30);
    FockRegister reg(1, c);
    reg.apply_one_mode(u_displacement(1.0, c), 0);
    reg.apply_loss(0.5, 0);
    GaussianState s = apply_loss({0.5, {0}}, apply(displacement(1.0, 0, 1), vacuum(1)));
    check_builder(col, "loss on coherent c=30", s, reg);
  }
  {  // loss on half a two-mode squeezed vacuum; also exercises reduce()
    const double r = 0.5;
    const int c = cc(30);
    FockRegister reg(2, c);
    reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
    reg.apply_loss(0.7, 1);
    GaussianState s = apply(two_mode_squeezer(r, 0, 1, 2), vacuum(2));
    s = apply_loss({0.7, {1}}, s);
    check_builder(col, "lossy tmsv arm c=30", s, reg);
  }
}

struct MomentCase {
  std::string name;
  SchemeConfig cfg;
  double phi;
  int cutoff;
};

LadderPoly observable_poly(const SchemeConfig& cfg, int n_modes) {
  const std::complex<double> i(0.0, 1.0);
  LadderPoly p(n_modes);
  switch (cfg.scheme) {
    case Scheme::ancilla_tmsv:
    case Scheme::hybrid: {
      const double ch = std::cosh(cfg.r), sh = std::sinh(cfg.r);
      const auto c1 = i * std::sqrt(cfg.eta) * ch * sh / std::sqrt(2.0);
      const auto c2 = i * cfg.eta * sh * sh / 2.0;
      p.add(c1, {annihilate(0), annihilate(2)});
      p.add(-c1, {create(0), create(2)});
      p.add(c2, {annihilate(2), create(1)});
      p.add(-c2, {annihilate(1), create(2)});
      return p;
    }
    case Scheme::su11_with_bs:
      p.add(i, {create(1), create(1)});
      p.add(-i, {annihilate(1), annihilate(1)});
      return p;
    case Scheme::su11_without_bs:
      p.add(i, {create(0), create(1)});
      p.add(-i, {annihilate(0), annihilate(1)});
      return p;
    case Scheme::caves:
    case Scheme::coherent_benchmark: {
      const double s = 1.0 / std::sqrt(2.0);
      p.add(s, {annihilate(1)});
      p.add(s, {create(1)});
      return p;
    }
  }
  throw std::invalid_argument("unknown scheme enum value");
}

QuadraticObservable observable_quad(const SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::ancilla_tmsv:
    case Scheme::hybrid:
      return build_m_anc(cfg.r, cfg.eta);
    case Scheme::su11_with_bs:
      return build_m1();
    case Scheme::su11_without_bs:
      return build_m12();
    case Scheme::caves:
    case Scheme::coherent_benchmark:
      return position_observable(1, 2);
  }
  throw std::invalid_argument("unknown scheme enum value");
}

void moment_checks(Collector& col, CheckTier tier) {
  std::vector<MomentCase> cases = {
      {"mom caves", {Scheme::caves, 0.5, 0.7, 0.6, 0.0}, 0.2, 26},
      {"mom caves lossless", {Scheme::caves, 0.5, 0.7, 1.0, 0.0}, 0.2, 26},
      {"mom su11bs", {Scheme::su11_with_bs, 0.5, 0.0, 0.7, 0.0}, 0.3, 30},
      {"mom su11", {Scheme::su11_without_bs, 0.5, 0.0, 0.7, 0.0}, 0.3, 20},
      {"mom coherent", {Scheme::coherent_benchmark, 0.0, 0.8, 0.5, 0.0}, 0.4, 16},
      {"mom ancilla", {Scheme::ancilla_tmsv, 0.4, 0.0, 0.7, 0.0}, 0.3, 14},
  };
  if (tier == CheckTier::full) {
    cases.push_back({"mom ancilla r=0.6", {Scheme::ancilla_tmsv, 0.6, 0.0, 0.6, 0.0}, 0.25, 14});
    cases.push_back({"mom hybrid", {Scheme::hybrid, 0.4, 0.6, 0.7, 0.0}, 0.3, 13});
    cases.push_back({"mom caves r=0.6 a=1.5", {Scheme::caves, 0.6, 1.5, 0.8, 0.0}, 0.2, 30});
  }
  for (const auto& mc : cases) {
    SchemeFamily fam = build_family(mc.cfg);
    const GaussianState s = fam(mc.phi);
    const QuadraticObservable m = observable_quad(mc.cfg);
    const double mean_g = expectation(m, s);
    const double var_g = variance(m, s);
    fock::FockRegister reg =
        fock::oracle_register(mc.cfg, mc.phi, capped(mc.cutoff));
    const auto [mean_f, var_f] = reg.moments(observable_poly(mc.cfg, s.n_modes));
    col.absolute(mc.name + " mean", mean_g, mean_f, 1e-6);
    col.absolute(mc.name + " var", var_g, var_f, 1e-6);
  }
}

void fidelity_checks(Collector& col, CheckTier tier) {
  struct FidCase {
    std::string name;
    SchemeConfig cfg;
    double phi_a, phi_b;
    int cutoff;
  };
  std::vector<FidCase> cases = {
      {"fid caves", {Scheme::caves, 0.5, 0.7, 0.7, 0.0}, 0.0, 0.4, 16},
      {"fid su11", {Scheme::su11_without_bs, 0.5, 0.0, 0.6, 0.0}, 0.0, 0.35, 18},
      {"fid coherent", {Scheme::coherent_benchmark, 0.0, 1.0, 0.8, 0.0}, 0.0, 0.5, 16},
  };
  if (tier == CheckTier::full) {
    cases.push_back({"fid ancilla", {Scheme::ancilla_tmsv, 0.4, 0.0, 0.6, 0.0}, 0.0, 0.4, 13});
    cases.push_back({"fid ancilla lossless", {Scheme::ancilla_tmsv, 0.4, 0.0, 1.0, 0.0}, 0.0, 0.4, 13});
    cases.push_back({"fid hybrid", {Scheme::hybrid, 0.4, 0.6, 0.7, 0.0}, 0.0, 0.45, 13});
  }
  for (const auto& fc : cases) {
    SchemeFamily fam = build_family(fc.cfg);
    const double f_g = gaussian_fidelity(fam(fc.phi_a), fam(fc.phi_b));
    const fock::FockState a =
        fock::oracle_build(fc.cfg, fc.phi_a, capped(fc.cutoff));
    const fock::FockState b =
        fock::oracle_build(fc.cfg, fc.phi_b, capped(fc.cutoff));
    col.absolute(fc.name, f_g, fock::oracle_fidelity(a, b), 1e-6);
  }
}

void qfi_checks(Collector& col, CheckTier tier) {
  struct QfiCase {
    std::string name;
    SchemeConfig cfg;
    int cutoff;
  };
  std::vector<QfiCase> cases = {
      {"qfi caves", {Scheme::caves, 0.5, 0.7, 0.6, 0.0}, 16},
      {"qfi caves lossless", {Scheme::caves, 0.5, 0.7, 1.0, 0.0}, 20},
      {"qfi su11bs", {Scheme::su11_with_bs, 0.5, 0.0, 0.7, 0.0}, 20},
      {"qfi su11bs lossless", {Scheme::su11_with_bs, 0.5, 0.0, 1.0, 0.0}, 28},
      {"qfi su11", {Scheme::su11_without_bs, 0.5, 0.0, 0.7, 0.0}, 20},
      {"qfi coherent", {Scheme::coherent_benchmark, 0.0, 1.0, 0.5, 0.0}, 16},
  };
  if (tier == CheckTier::full) {
    cases.push_back({"qfi ancilla", {Scheme::ancilla_tmsv, 0.4, 0.0, 0.6, 0.0}, 14});
    cases.push_back({"qfi ancilla lossless", {Scheme::ancilla_tmsv, 0.4, 0.0, 1.0, 0.0}, 14});
    cases.push_back({"qfi hybrid", {Scheme::hybrid, 0.4, 0.6, 0.7, 0.0}, 13});
  }
  for (const auto& qc : cases) {
    const double j_g = qfi_fidelity(build_family(qc.cfg), 0.1).value;
    const double j_f = fock::oracle_qfi(qc.cfg, 0.1, 1e-3, capped(qc.cutoff));
    col.relative(qc.name, j_g, j_f, 1e-3);
  }
}

void stability_checks(Collector& col) {
  // doubling the cutoff must not move oracle results
  SchemeConfig su{Scheme::su11_without_bs, 0.5, 0.0, 0.7, 0.0};
  const double j1 = fock::oracle_qfi(su, 0.1, 1e-3, capped(16));
  const double j2 = fock::oracle_qfi(su, 0.1, 1e-3, capped(32));
  col.absolute("stability su11 qfi c16 vs c32", j1, j2, 1e-6);

  SchemeConfig cav{Scheme::caves, 0.5, 0.7, 0.8, 0.0};
  fock::FockRegister r1 = fock::oracle_register(cav, 0.2, capped(24));
  fock::FockRegister r2 = fock::oracle_register(cav, 0.2, capped(48));
  const auto m1 = r1.moments(observable_poly(cav, 2));
  const auto m2 = r2.moments(observable_poly(cav, 2));
  col.absolute("stability caves mean c24 vs c48", m1.first, m2.first, 1e-6);
  col.absolute("stability caves var c24 vs c48", m1.second, m2.second, 1e-6);
}

}  // namespace

std::vector<CheckResult> run_oracle_checks(CheckTier tier, int cutoff_cap) {
  g_cutoff_cap = cutoff_cap;
  Collector col;
  const auto guarded = [&col](const char* group, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      col.results.push_back({std::string(group) + ": " + e.what(), 1.0, 0.0,
                             false, false});
    }
  };
  guarded("builders", [&] { builder_checks(col, tier); });
  guarded("moments", [&] { moment_checks(col, tier); });
  guarded("fidelity", [&] { fidelity_checks(col, tier); });
  guarded("qfi", [&] { qfi_checks(col, tier); });
  if (tier == CheckTier::full) {
    guarded("stability", [&] { stability_checks(col); });
  }
  g_cutoff_cap = 0;
  return col.results;
}

std::string render_report(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  double worst_ratio = 0.0;
  std::string worst_name;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  deviation="
        << r.deviation << (r.relative ? " (rel)" : " (abs)")
        << " tolerance=" << r.tolerance << "\n";
    const double frac = r.deviation / r.tolerance;
    if (frac > worst_ratio) {
      worst_ratio = frac;
      worst_name = r.name;
    }
  }
  out << results.size() << " checks; worst deviation/tolerance = " << worst_ratio
      << " (" << worst_name << ")\n";
  return out.str();
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace gqm
