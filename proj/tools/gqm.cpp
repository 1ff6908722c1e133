// Command-line front end: parameter scans, figure-preset CSV bundles, the
// optimal-measurement report and the oracle cross-validation suite.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqm/crossval.hpp"
#include "gqm/csv.hpp"
#include "gqm/estimation.hpp"
#include "gqm/fock.hpp"
#include "gqm/observable.hpp"
#include "gqm/schemes.hpp"

namespace {

struct EtaGrid {
  double start = 0.05, stop = 1.0, step = 0.05;

  std::vector<double> points() const {
    if (step <= 0.0 || stop < start) {
      throw CLI::ValidationError("--eta-grid", "need start <= stop and step > 0");
    }
    std::vector<double> out;
    for (int i = 0;; ++i) {
      const double eta = start + i * step;
      if (eta > stop + 1e-12) break;
      out.push_back(std::min(eta, 1.0));
    }
    if (out.empty()) throw CLI::ValidationError("--eta-grid", "empty grid");
    return out;
  }
};

EtaGrid parse_grid(const std::string& spec) {
  EtaGrid g;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &g.start, &g.stop, &g.step) != 3) {
    throw CLI::ValidationError("--eta-grid", "expected start:stop:step");
  }
  return g;
}

// photon-matched coherent amplitude for the benchmark column
double benchmark_alpha(const gqm::SchemeConfig& cfg) {
  return std::sqrt(gqm::photons_at_phase_shift(cfg));
}

// closed-form 1/Var(phi) at the optimal working point, where available
double closed_form_information(const gqm::SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case gqm::Scheme::ancilla_tmsv:
      return 1.0 / gqm::eq12_min_var(cfg.r, cfg.eta);
    case gqm::Scheme::su11_with_bs:
      return gqm::eq21_su11_qfi(cfg.r, cfg.eta);
    case gqm::Scheme::coherent_benchmark:
      return gqm::coherent_benchmark_qfi(cfg.alpha, cfg.eta);
    default:
      return std::nan("");
  }
}

void run_scan(const gqm::SchemeConfig& base, const EtaGrid& grid,
              double phi, double dphi, const std::string& out_path) {
  gqm::CsvWriter csv(out_path,
                     {"eta", "qfi_fidelity", "inv_var_closed_form",
                      "coherent_benchmark"});
  for (double eta : grid.points()) {
    gqm::SchemeConfig cfg = base;
    cfg.eta = eta;
    const double j = gqm::qfi_fidelity(gqm::build_family(cfg), phi, dphi).value;
    const double closed = closed_form_information(cfg);
    const double bench = gqm::coherent_benchmark_qfi(benchmark_alpha(cfg), eta);
    csv.row(std::vector<double>{eta, j, closed, bench});
  }
  csv.close();
}

void figure_fig1(const std::string& out, double dphi) {
  const double r = 1.5;
  gqm::SchemeConfig tmsv{gqm::Scheme::ancilla_tmsv, r, 0.0, 1.0, 0.0};
  const double alpha = benchmark_alpha(tmsv);  // same photons at the phase shift
  gqm::CsvWriter csv(out, {"eta", "qfi_tmsv", "qfi_coherent", "coherent_bound",
                           "inv_var_manc"});
  for (int i = 1; i <= 50; ++i) {
    const double eta = 0.02 * i;
    gqm::SchemeConfig cfg = tmsv;
    cfg.eta = eta;
    gqm::SchemeConfig coh{gqm::Scheme::coherent_benchmark, 0.0, alpha, eta, 0.0};
    csv.row(std::vector<double>{
        eta, gqm::qfi_fidelity(gqm::build_family(cfg), 0.0, dphi).value,
        gqm::qfi_fidelity(gqm::build_family(coh), 0.0, dphi).value,
        gqm::coherent_benchmark_qfi(alpha, eta),
        1.0 / gqm::eq12_min_var(r, eta)});
  }
  csv.close();
}

void figure_fig2(const std::string& out, double dphi) {
  const double r = 1.15;
  const double alpha = std::sinh(r);
  gqm::CsvWriter csv(out, {"eta", "qfi_caves", "inv_var_mhat",
                           "coherent_bound", "photon_counting_lossless"});
  const gqm::QuadraticObservable m = gqm::build_m_caves(r, alpha, 0.0);
  for (int i = 1; i <= 50; ++i) {
    const double eta = 0.02 * i;
    gqm::SchemeConfig cfg{gqm::Scheme::caves, r, alpha, eta, 0.0};
    gqm::SchemeFamily fam = gqm::build_family(cfg);
    const double j = gqm::qfi_fidelity(fam, 0.0, dphi).value;
    const double stars = 1.0 / gqm::error_propagation(m, fam, 0.0);
    const double bench = gqm::coherent_benchmark_qfi(benchmark_alpha(cfg), eta);
    csv.row(std::vector<double>{eta, j, stars, bench,
                                gqm::eq14_photon_counting(r, alpha)});
  }
  csv.close();
}

void figure_fig4(const std::string& out, double dphi) {
  const double r = 1.15;
  const double nbar = 2.0 * std::sinh(r) * std::sinh(r);
  const double r_anc = std::asinh(std::sqrt(2.0 * nbar));
  const double alpha_caves = std::sinh(r);
  gqm::CsvWriter csv(out, {"eta", "qfi_ancilla", "qfi_caves", "qfi_su11_bs",
                           "qfi_su11", "coherent_bound"});
  for (int i = 1; i <= 50; ++i) {
    const double eta = 0.02 * i;
    const auto j = [&](gqm::SchemeConfig cfg) {
      return gqm::qfi_fidelity(gqm::build_family(cfg), 0.0, dphi).value;
    };
    csv.row(std::vector<double>{
        eta, j({gqm::Scheme::ancilla_tmsv, r_anc, 0.0, eta, 0.0}),
        j({gqm::Scheme::caves, r, alpha_caves, eta, 0.0}),
        j({gqm::Scheme::su11_with_bs, r, 0.0, eta, 0.0}),
        j({gqm::Scheme::su11_without_bs, r, 0.0, eta, 0.0}),
        2.0 * eta * nbar});
  }
  csv.close();
}

void figure_s1(const std::string& out) {
  const double r = 1.0;
  gqm::SchemeConfig cfg{gqm::Scheme::caves, r, std::sinh(r), 1.0, 0.0};
  const gqm::QuadraticObservable m =
      gqm::build_m_caves(cfg.r, cfg.alpha, cfg.theta);
  std::vector<double> grid(401);
  for (int i = 0; i < 401; ++i) {
    grid[i] = cfg.theta - M_PI + 2.0 * M_PI * i / 400.0;
  }
  const gqm::PrecisionCurve curve = gqm::fisher_vs_phi(cfg, m, grid);
  gqm::CsvWriter csv(out, {"phi", "fisher_information"});
  for (size_t i = 0; i < curve.x.size(); ++i) {
    csv.row(std::vector<double>{curve.x[i], curve.y[i]});
  }
  csv.close();
}

void figure_s2(const std::string& out, double nbar_min, double nbar_max,
               int points) {
  std::vector<double> r_grid(points);
  for (int i = 0; i < points; ++i) {
    const double nbar = nbar_min * std::pow(nbar_max / nbar_min,
                                            double(i) / (points - 1));
    r_grid[i] = std::asinh(std::sqrt(nbar / 2.0));
  }
  const auto rows = gqm::fwhm_scaling(r_grid);
  gqm::CsvWriter csv(out, {"n_mean", "w_times_n"});
  for (const auto& [nbar, wn] : rows) {
    csv.row(std::vector<double>{nbar, wn});
  }
  csv.close();
}

void print_observable(const gqm::QuadraticObservable& m) {
  std::printf("constant c = %s\n", gqm::format_value(m.c).c_str());
  std::printf("linear l (x_0..x_%d, p_0..p_%d):\n", m.n_modes - 1, m.n_modes - 1);
  for (int i = 0; i < 2 * m.n_modes; ++i) {
    std::printf("  %s\n", gqm::format_value(m.l(i)).c_str());
  }
  std::printf("quadratic A:\n");
  for (int i = 0; i < 2 * m.n_modes; ++i) {
    std::string line = "  ";
    for (int j = 0; j < 2 * m.n_modes; ++j) {
      line += gqm::format_value(m.A(i, j));
      if (j + 1 < 2 * m.n_modes) line += " ";
    }
    std::printf("%s\n", line.c_str());
  }
}

int run_sld(const gqm::SchemeConfig& cfg, double phi) {
  if (cfg.eta < 1.0) {
    std::fprintf(stderr,
                 "sld: family is mixed at eta=%g; the pure-state construction "
                 "does not apply\n", cfg.eta);
    return 2;
  }
  gqm::SchemeFamily fam = gqm::build_family(cfg);
  const gqm::QuadraticObservable l = gqm::sld_pure(fam, phi);
  std::printf("optimal observable for %s at phi=%s (constant omitted)\n",
              fam.label.c_str(), gqm::format_value(phi).c_str());
  print_observable(l);
  if (cfg.scheme == gqm::Scheme::caves) {
    const gqm::QuadraticObservable m =
        gqm::build_m_caves(cfg.r, cfg.alpha, phi);
    double num = l.l.dot(m.l) + (l.A.cwiseProduct(m.A)).sum();
    double den = m.l.squaredNorm() + m.A.squaredNorm();
    const double scale = num / den;
    gqm::QuadraticObservable resid = l;
    resid.l -= scale * m.l;
    resid.A -= scale * m.A;
    const double rel = std::sqrt(resid.l.squaredNorm() + resid.A.squaredNorm()) /
                       std::sqrt(l.l.squaredNorm() + l.A.squaredNorm());
    std::printf("fitted scale against the printed observable: %s "
                "(relative residual %s)\n",
                gqm::format_value(scale).c_str(), gqm::format_value(rel).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state interferometer precision toolkit"};
  app.set_config("--config", "", "flat key=value configuration file");
  argv = app.ensure_utf8(argv);

  std::string scheme_name = "ancilla_tmsv";
  double r = 1.5, alpha = 0.0, eta = 1.0, theta = 0.0, phi = 0.0, dphi = 1e-3;
  std::string eta_grid_spec = "0.05:1.0:0.05";
  std::string out_path = "out.csv";
  std::string preset = "fig1";
  std::string tier = "quick";
  int cutoff = 0;
  double nbar_min = 1.0, nbar_max = 40.0;
  int points = 12;

  app.add_option("--scheme", scheme_name,
                 "ancilla_tmsv|caves|hybrid|su11_with_bs|su11_without_bs|"
                 "coherent_benchmark");
  app.add_option("--r", r, "squeezing parameter");
  app.add_option("--alpha", alpha, "coherent amplitude");
  app.add_option("--eta", eta, "transmissivity");
  app.add_option("--theta", theta, "working-point estimate");
  app.add_option("--phi", phi, "phase");
  app.add_option("--dphi", dphi, "finite-difference step for the QFI");
  app.add_option("--eta-grid", eta_grid_spec, "start:stop:step");
  app.add_option("--out", out_path, "output path");
  app.add_option("--cutoff", cutoff,
                 "cap on the oracle photon-number cutoff (0 = per-check default)");
  app.add_option("--nbar-min", nbar_min, "smallest probe photon number");
  app.add_option("--nbar-max", nbar_max, "largest probe photon number");
  app.add_option("--points", points, "grid size for the width scan");

  auto* scan = app.add_subcommand("scan", "QFI and benchmarks over a loss grid");
  auto* figure = app.add_subcommand("figure", "emit a figure preset as CSV");
  figure->add_option("--preset", preset, "fig1|fig2|fig4|figS1|figS2");
  auto* sld = app.add_subcommand("sld", "print the optimal observable");
  auto* oracle = app.add_subcommand("oracle-check",
                                    "cross-validate against the Fock oracle");
  oracle->add_option("--tier", tier, "quick|full");
  auto* fwhm_cmd = app.add_subcommand("fwhm", "information-peak width scaling");
  app.require_subcommand(1);
  for (auto* sub : {scan, figure, sld, oracle, fwhm_cmd}) {
    sub->fallthrough();  // accept the shared options after the subcommand
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    gqm::SchemeConfig cfg{gqm::scheme_from_string(scheme_name), r, alpha, eta,
                          theta};
    if (scan->parsed()) {
      run_scan(cfg, parse_grid(eta_grid_spec), phi, dphi, out_path);
    } else if (figure->parsed()) {
      if (preset == "fig1") figure_fig1(out_path, dphi);
      else if (preset == "fig2") figure_fig2(out_path, dphi);
      else if (preset == "fig4") figure_fig4(out_path, dphi);
      else if (preset == "figS1") figure_s1(out_path);
      else if (preset == "figS2") figure_s2(out_path, nbar_min, nbar_max, points);
      else {
        std::fprintf(stderr, "unknown figure preset: %s\n", preset.c_str());
        return 1;
      }
    } else if (sld->parsed()) {
      return run_sld(cfg, phi);
    } else if (oracle->parsed()) {
      if (tier != "quick" && tier != "full") {
        std::fprintf(stderr, "unknown tier: %s\n", tier.c_str());
        return 1;
      }
      const auto results = gqm::run_oracle_checks(
          tier == "full" ? gqm::CheckTier::full : gqm::CheckTier::quick, cutoff);
      std::fputs(gqm::render_report(results).c_str(), stdout);
      return gqm::all_pass(results) ? 0 : 2;
    } else if (fwhm_cmd->parsed()) {
      figure_s2(out_path, nbar_min, nbar_max, points);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
