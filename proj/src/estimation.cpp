#include "gqm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gqm {

double mean_slope(const QuadraticObservable& m, const SchemeFamily& fam,
                  double phi, double step) {
  const auto central = [&](double h) {
    return (expectation(m, fam(phi + h)) - expectation(m, fam(phi - h))) /
           (2.0 * h);
  };
  const double s1 = central(step);
  const double s2 = central(step / 2.0);
  return (4.0 * s2 - s1) / 3.0;
}

double error_propagation(const QuadraticObservable& m, const SchemeFamily& fam,
                         double phi) {
  const GaussianState s = fam(phi);
  const double var = variance(m, s);
  const double slope = mean_slope(m, fam, phi);
  const double scale = std::sqrt(std::max(var, 1.0)) ;
  if (std::abs(slope) < 1e-9 * scale) {
    throw std::domain_error(
        "error_propagation: d<M>/dphi vanishes at phi = " + std::to_string(phi) +
        "; unusable working point");
  }
  return var / (slope * slope);
}

QuadraticObservable sld_pure(const SchemeFamily& fam, double phi) {
  const GaussianState s0 = fam(phi);
  const Vec nu = symplectic_eigenvalues(s0.gamma);
  if ((nu.array() - 1.0).abs().maxCoeff() > 1e-6) {
    throw std::invalid_argument(
        "sld_pure: family is mixed at phi (symplectic eigenvalue " +
        std::to_string(nu.maxCoeff()) + "); valid for pure states only");
  }
  const double h = 1e-5;
  const GaussianState sp = fam(phi + h);
  const GaussianState sm = fam(phi - h);
  const Mat gamma_dot = (sp.gamma - sm.gamma) / (2.0 * h);
  const Vec d_dot = (sp.d - sm.d) / (2.0 * h);

  const Mat ginv = s0.gamma.inverse();
  const Mat dginv = -ginv * gamma_dot * ginv;  // d/dphi of gamma^{-1}

  QuadraticObservable l = QuadraticObservable::zero(s0.n_modes);
  l.A = -0.5 * dginv;
  l.l = dginv * s0.d + 2.0 * ginv * d_dot;
  l.c = 0.0;  // constant term omitted
  return l;
}

PrecisionCurve fisher_vs_phi(const SchemeConfig& cfg,
                             const QuadraticObservable& m,
                             const std::vector<double>& phi_grid) {
  if (phi_grid.empty()) throw std::invalid_argument("empty phi grid");
  SchemeFamily fam = build_family(cfg);
  PrecisionCurve curve;
  curve.label = fam.label + " information";
  curve.x = phi_grid;
  curve.y.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    const double var = variance(m, fam(phi));
    const double slope = mean_slope(m, fam, phi);
    curve.y.push_back(slope * slope / var);
  }
  return curve;
}

namespace {

double interp(const PrecisionCurve& c, double x) {
  auto it = std::upper_bound(c.x.begin(), c.x.end(), x);
  size_t hi = std::clamp<size_t>(static_cast<size_t>(it - c.x.begin()), 1,
                                 c.x.size() - 1);
  size_t lo = hi - 1;
  const double t = (x - c.x[lo]) / (c.x[hi] - c.x[lo]);
  return c.y[lo] + t * (c.y[hi] - c.y[lo]);
}

// bisect f(x) = target on [a, b], f monotone across the bracket
double bisect(const std::function<double(double)>& f, double a, double b,
              double target) {
  double fa = f(a) - target;
  for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid) - target;
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double fwhm(const PrecisionCurve& curve,
            const std::function<double(double)>& eval) {
  const size_t n = curve.x.size();
  if (n < 3) throw std::invalid_argument("fwhm: need at least 3 grid points");
  size_t peak = 0;
  for (size_t i = 1; i < n; ++i) {
    if (curve.y[i] > curve.y[peak]) peak = i;
  }
  if (peak == 0 || peak == n - 1) {
    throw std::invalid_argument("fwhm: peak is not strictly inside the grid");
  }
  const double half = 0.5 * curve.y[peak];
  const std::function<double(double)> f =
      eval ? eval : [&curve](double x) { return interp(curve, x); };

  // walk outward to bracket the half-max crossing on each flank
  size_t lo = peak;
  while (lo > 0 && curve.y[lo] > half) --lo;
  if (curve.y[lo] > half) {
    throw std::invalid_argument("fwhm: left half-max crossing not bracketed");
  }
  size_t hi = peak;
  while (hi < n - 1 && curve.y[hi] > half) ++hi;
  if (curve.y[hi] > half) {
    throw std::invalid_argument("fwhm: right half-max crossing not bracketed");
  }
  const double left = bisect(f, curve.x[lo], curve.x[lo + 1], half);
  const double right = bisect(f, curve.x[hi - 1], curve.x[hi], half);
  return right - left;
}

std::vector<std::pair<double, double>> fwhm_scaling(
    const std::vector<double>& r_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    SchemeConfig cfg{Scheme::caves, r, std::sinh(r), 1.0, 0.0};
    SchemeFamily fam = build_family(cfg);
    const QuadraticObservable m = build_m_caves(cfg.r, cfg.alpha, cfg.theta);
    const double nbar = mean_photon(fam(0.0));

    const int npts = 401;
    std::vector<double> grid(npts);
    for (int i = 0; i < npts; ++i) {
      grid[i] = cfg.theta - M_PI + 2.0 * M_PI * i / (npts - 1);
    }
    PrecisionCurve curve = fisher_vs_phi(cfg, m, grid);
    const auto point_info = [&](double phi) {
      const double var = variance(m, fam(phi));
      const double slope = mean_slope(m, fam, phi);
      return slope * slope / var;
    };
    const double w = fwhm(curve, point_info);
    out.emplace_back(nbar, w * nbar);
  }
  return out;
}

}  // namespace gqm
