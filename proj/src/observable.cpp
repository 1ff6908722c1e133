#include "gqm/observable.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gqm {

LadderPoly& LadderPoly::add(std::complex<double> coeff,
                            std::vector<LadderFactor> factors) {
  if (factors.size() > 2) {
    throw std::invalid_argument("ladder monomials are limited to degree 2");
  }
  terms.push_back({coeff, std::move(factors)});
  return *this;
}

LadderPoly LadderPoly::dagger() const {
  LadderPoly out(n_modes);
  for (const auto& t : terms) {
    LadderTerm ct;
    ct.coeff = std::conj(t.coeff);
    ct.factors.assign(t.factors.rbegin(), t.factors.rend());
    for (auto& f : ct.factors) f.dagger = !f.dagger;
    out.terms.push_back(std::move(ct));
  }
  return out;
}

QuadraticObservable QuadraticObservable::zero(int n_modes) {
  QuadraticObservable m;
  m.n_modes = n_modes;
  m.c = 0.0;
  m.l = Vec::Zero(2 * n_modes);
  m.A = Mat::Zero(2 * n_modes, 2 * n_modes);
  return m;
}

QuadraticObservable QuadraticObservable::scaled(double s) const {
  QuadraticObservable out = *this;
  out.c *= s;
  out.l *= s;
  out.A *= s;
  return out;
}

namespace {

// b = (x + ip)/sqrt(2), b^dag = (x - ip)/sqrt(2) as complex vectors over R.
Eigen::VectorXcd ladder_vector(const LadderFactor& f, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  const double s = 1.0 / std::sqrt(2.0);
  v(f.mode) = s;
  v(f.mode + n) = f.dagger ? Cplx(0.0, -s) : Cplx(0.0, s);
  return v;
}

}  // namespace

QuadraticObservable ladder_to_quadratic(const LadderPoly& poly) {
  const int n = poly.n_modes;
  if (n < 1) throw std::invalid_argument("ladder polynomial has no modes");
  Cplx c = 0.0;
  Eigen::VectorXcd l = Eigen::VectorXcd::Zero(2 * n);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const Mat omega = symplectic_form(n);

  for (const auto& t : poly.terms) {
    for (const auto& f : t.factors) {
      if (f.mode < 0 || f.mode >= n) {
        throw std::out_of_range("ladder factor mode out of range");
      }
    }
    switch (t.factors.size()) {
      case 0:
        c += t.coeff;
        break;
      case 1:
        l += t.coeff * ladder_vector(t.factors[0], n);
        break;
      case 2: {
        Eigen::VectorXcd u = ladder_vector(t.factors[0], n);
        Eigen::VectorXcd w = ladder_vector(t.factors[1], n);
        A += t.coeff * 0.5 * (u * w.transpose() + w * u.transpose());
        c += t.coeff * Cplx(0.0, 0.5) * (u.transpose() * omega * w)(0);
        break;
      }
      default:
        throw std::invalid_argument("ladder monomial degree exceeds 2");
    }
  }

  const double residue =
      std::max({std::abs(c.imag()), l.imag().cwiseAbs().maxCoeff(),
                A.imag().cwiseAbs().maxCoeff()});
  if (residue > 1e-10) {
    throw std::invalid_argument("ladder polynomial is not Hermitian "
                                "(imaginary residue " + std::to_string(residue) +
                                ")");
  }
  QuadraticObservable m;
  m.n_modes = n;
  m.c = c.real();
  m.l = l.real();
  m.A = 0.5 * (A.real() + A.real().transpose());
  return m;
}

double expectation(const QuadraticObservable& m, const GaussianState& s) {
  if (m.n_modes != s.n_modes) {
    throw std::invalid_argument("observable and state mode counts differ");
  }
  return m.c + m.l.dot(s.d) + s.d.dot(m.A * s.d) + 0.5 * (m.A * s.gamma).trace();
}

double variance(const QuadraticObservable& m, const GaussianState& s) {
  if (m.n_modes != s.n_modes) {
    throw std::invalid_argument("observable and state mode counts differ");
  }
  // the trace terms cancel several orders of magnitude at large squeezing;
  // contract in extended precision
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const LMat a = m.A.cast<long double>();
  const LMat gamma = s.gamma.cast<long double>();
  const LMat omega = symplectic_form(s.n_modes).cast<long double>();
  const LVec lp = m.l.cast<long double>() + 2.0L * a * s.d.cast<long double>();
  const LMat ag = a * gamma;
  const LMat ao = a * omega;
  const long double var = 0.5L * lp.dot(gamma * lp) +
                          0.5L * ((ag * ag).trace() + (ao * ao).trace());
  return static_cast<double>(var);
}

QuadraticObservable build_m_anc(double r, double eta) {
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  const Cplx i(0.0, 1.0);
  const double ch = std::cosh(r), sh = std::sinh(r);
  LadderPoly p(3);
  const Cplx c1 = i * std::sqrt(eta) * ch * sh / std::sqrt(2.0);
  p.add(c1, {annihilate(0), annihilate(2)});
  p.add(-c1, {create(0), create(2)});
  const Cplx c2 = i * eta * sh * sh / 2.0;
  p.add(c2, {annihilate(2), create(1)});
  p.add(-c2, {annihilate(1), create(2)});
  return ladder_to_quadratic(p);
}

QuadraticObservable build_m_caves(double r, double alpha, double theta) {
  const Cplx i(0.0, 1.0);
  const double s2 = std::sqrt(2.0);
  const auto ex = [](double x) { return std::exp(x); };
  const auto exi = [](double re, double im) {
    return std::exp(Cplx(re, im));
  };
  LadderPoly p(2);
  // squeezed-mode quadratic part
  p.add(i / 4.0 * (exi(-2 * r, -2 * theta) - exi(2 * r, -2 * theta)),
        {create(1), create(1)});
  p.add(i / 4.0 * (exi(2 * r, 2 * theta) - exi(-2 * r, 2 * theta)),
        {annihilate(1), annihilate(1)});
  // linear part, reference mode
  p.add(i * alpha / (2 * s2) * (1.0 - ex(2 * r)), {annihilate(0)});
  p.add(i * alpha / (2 * s2) * (ex(2 * r) - 1.0), {create(0)});
  // linear part, probe mode
  p.add(i * alpha / (2 * s2) * (3.0 * exi(0, theta) + exi(2 * r, theta)),
        {annihilate(1)});
  p.add(-i * alpha / (2 * s2) * (3.0 * exi(0, -theta) + exi(2 * r, -theta)),
        {create(1)});
  // cross terms
  p.add(-i / 4.0 * exi(2 * r, -theta) - i / 4.0 * exi(-2 * r, -theta) +
            i / 2.0 * exi(0, -theta),
        {create(1), annihilate(0)});
  p.add(i / 4.0 * exi(-2 * r, theta) + i / 4.0 * exi(2 * r, theta) -
            i / 2.0 * exi(0, theta),
        {create(0), annihilate(1)});
  p.add(i / 4.0 * (exi(2 * r, -theta) - exi(-2 * r, -theta)),
        {create(0), create(1)});
  p.add(i / 4.0 * (exi(-2 * r, theta) - exi(2 * r, theta)),
        {annihilate(0), annihilate(1)});
  return ladder_to_quadratic(p);
}

QuadraticObservable build_m1() {
  const Cplx i(0.0, 1.0);
  LadderPoly p(2);
  p.add(i, {create(1), create(1)});
  p.add(-i, {annihilate(1), annihilate(1)});
  return ladder_to_quadratic(p);
}

QuadraticObservable build_m12() {
  const Cplx i(0.0, 1.0);
  LadderPoly p(2);
  p.add(i, {create(0), create(1)});
  p.add(-i, {annihilate(0), annihilate(1)});
  return ladder_to_quadratic(p);
}

QuadraticObservable position_observable(int mode, int n_modes) {
  const double s = 1.0 / std::sqrt(2.0);
  LadderPoly p(n_modes);
  p.add(s, {annihilate(mode)});
  p.add(s, {create(mode)});
  return ladder_to_quadratic(p);
}

}  // namespace gqm
