#include "gqm/fock.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "hermitian_eig.hpp"

namespace gqm::fock {

Eigen::MatrixXcd annihilation_op(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("cutoff must be at least 2");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

FockOperator ladder_matrix(const LadderPoly& poly, int cutoff) {
  const int modes = poly.n_modes;
  long dim = 1;
  for (int m = 0; m < modes; ++m) dim *= cutoff;
  const Eigen::MatrixXcd a1 = annihilation_op(cutoff);

  const auto embed = [&](const LadderFactor& f) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int m = 0; m < modes; ++m) {
      Eigen::MatrixXcd blk;
      if (m == f.mode) {
        blk = f.dagger ? Eigen::MatrixXcd(a1.adjoint()) : a1;
      } else {
        blk = Eigen::MatrixXcd::Identity(cutoff, cutoff);
      }
      Eigen::MatrixXcd next(op.rows() * cutoff, op.cols() * cutoff);
      for (int i = 0; i < op.rows(); ++i)
        for (int j = 0; j < op.cols(); ++j)
          next.block(i * cutoff, j * cutoff, cutoff, cutoff) = op(i, j) * blk;
      op = std::move(next);
    }
    return op;
  };

  FockOperator out{cutoff, modes, Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto& t : poly.terms) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& f : t.factors) term = term * embed(f);
    out.data += t.coeff * term;
  }
  return out;
}

// --- unitary cache --------------------------------------------------------

namespace {

using CacheKey = std::tuple<char, double, double, int>;

Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& k) {
  // k is anti-Hermitian: diagonalize ik and exponentiate the spectrum.
  Eigen::MatrixXcd h = Cplx(0.0, 1.0) * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (int i = 0; i < phase.size(); ++i) {
    phase(i) = std::exp(Cplx(0.0, -es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Two-mode exponential of a charge-conserving hopping generator, built block
// by block over the conserved charge. `states(q)` lists the basis indices of
// charge block q in chain order; the generator couples consecutive chain
// entries with amplitude i*h(q, k) between k and k+1 (Hermitian part).
Eigen::MatrixXcd expm_charge_blocks(
    int cutoff, int q_min, int q_max,
    const std::function<std::vector<int>(int)>& states,
    const std::function<Cplx(int, int)>& coupling) {
  const int dim = cutoff * cutoff;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (int q = q_min; q <= q_max; ++q) {
    const std::vector<int> idx = states(q);
    const int m = static_cast<int>(idx.size());
    if (m == 0) continue;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k + 1 < m; ++k) {
      const Cplx c = coupling(q, k);
      h(k + 1, k) = c;
      h(k, k + 1) = std::conj(c);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phase(m);
    for (int i = 0; i < m; ++i) {
      phase(i) = std::exp(Cplx(0.0, -es.eigenvalues()(i)));
    }
    const Eigen::MatrixXcd ub =
        es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) u(idx[i], idx[j]) = ub(i, j);
  }
  return u;
}

std::mutex cache_mutex;
std::map<CacheKey, Eigen::MatrixXcd> unitary_cache;

Eigen::MatrixXcd cached(char kind, double p1, double p2, int cutoff,
                        const std::function<Eigen::MatrixXcd()>& make) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  CacheKey key{kind, p1, p2, cutoff};
  auto it = unitary_cache.find(key);
  if (it != unitary_cache.end()) return it->second;
  Eigen::MatrixXcd u = make();
  // two-mode blocks at large cutoff are big; keep only the small ones around
  if (u.rows() <= 1700) unitary_cache.emplace(key, u);
  return u;
}

}  // namespace

Eigen::MatrixXcd u_phase(double phi, int cutoff) {
  Eigen::VectorXcd diag(cutoff);
  for (int n = 0; n < cutoff; ++n) diag(n) = std::exp(Cplx(0.0, -phi * n));
  return diag.asDiagonal();
}

Eigen::MatrixXcd u_displacement(Cplx alpha, int cutoff) {
  return cached('d', alpha.real(), alpha.imag(), cutoff, [&] {
    const Eigen::MatrixXcd a = annihilation_op(cutoff);
    return expm_antihermitian(alpha * a.adjoint() - std::conj(alpha) * a);
  });
}

Eigen::MatrixXcd u_one_mode_squeezer(double r, int cutoff) {
  return cached('s', r, 0.0, cutoff, [&] {
    const Eigen::MatrixXcd a = annihilation_op(cutoff);
    const Eigen::MatrixXcd a2 = a * a;
    return expm_antihermitian(0.5 * r * (a2 - a2.adjoint()));
  });
}

Eigen::MatrixXcd u_two_mode_squeezer(double r, int cutoff) {
  // exp(r(a1 a2 - a1^d a2^d)) conserves n1 - n2: exponentiate per block.
  return cached('t', r, 0.0, cutoff, [&] {
    const int c = cutoff;
    const auto states = [c](int q) {
      std::vector<int> idx;
      for (int k = 0; k < c; ++k) {
        const int n1 = q >= 0 ? q + k : k;
        const int n2 = q >= 0 ? k : k - q;
        if (n1 >= c || n2 >= c) break;
        idx.push_back(n1 * c + n2);
      }
      return idx;
    };
    // i*K between chain sites k and k+1: -i r sqrt((n1+1)(n2+1))
    const auto coupling = [c, r](int q, int k) {
      const int n1 = q >= 0 ? q + k : k;
      const int n2 = q >= 0 ? k : k - q;
      return Cplx(0.0, -r * std::sqrt(double(n1 + 1) * double(n2 + 1)));
    };
    return expm_charge_blocks(c, -(c - 1), c - 1, states, coupling);
  });
}

Eigen::MatrixXcd u_beamsplitter(double transmissivity, int cutoff) {
  if (transmissivity < 0.0 || transmissivity > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  // exp(theta(a1^d a2 - a1 a2^d)) conserves n1 + n2. With
  // cos(theta) = sqrt(t) this realizes b1 -> sqrt(t) b1 + sqrt(1-t) b2.
  return cached('b', transmissivity, 0.0, cutoff, [&] {
    const int c = cutoff;
    const double theta = std::acos(std::sqrt(transmissivity));
    const auto states = [c](int q) {
      std::vector<int> idx;
      for (int n1 = std::max(0, q - c + 1); n1 <= std::min(q, c - 1); ++n1) {
        idx.push_back(n1 * c + (q - n1));
      }
      return idx;
    };
    // chain site k has n1 = max(0, q-c+1) + k; i*K couples k -> k+1 via
    // a1^d a2 with amplitude i*theta*sqrt((n1+1) n2)
    const auto coupling = [c, theta](int q, int k) {
      const int n1 = std::max(0, q - c + 1) + k;
      const int n2 = q - n1;
      return Cplx(0.0, theta * std::sqrt(double(n1 + 1) * double(n2)));
    };
    return expm_charge_blocks(c, 0, 2 * (c - 1), states, coupling);
  });
}

// --- register -------------------------------------------------------------

FockRegister::FockRegister(int n_system_modes, int cutoff)
    : cutoff_(cutoff), n_sys_(n_system_modes), n_total_(n_system_modes) {
  if (n_system_modes < 1) throw std::invalid_argument("need at least one mode");
  if (cutoff < 4) throw std::invalid_argument("cutoff too small");
  long dim = 1;
  for (int m = 0; m < n_total_; ++m) dim *= cutoff;
  psi_ = Eigen::VectorXcd::Zero(dim);
  psi_(0) = 1.0;
}

void FockRegister::apply_one_mode(const Eigen::MatrixXcd& u, int mode) {
  if (mode < 0 || mode >= n_total_) throw std::out_of_range("mode out of range");
  const long dim = psi_.size();
  long stride = 1;
  for (int m = n_total_ - 1; m > mode; --m) stride *= cutoff_;
  const long block = stride * cutoff_;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd in(cutoff_);
  for (long base = 0; base < dim; base += block) {
    for (long off = 0; off < stride; ++off) {
      for (int n = 0; n < cutoff_; ++n) in(n) = psi_(base + off + n * stride);
      Eigen::VectorXcd res = u * in;
      for (int n = 0; n < cutoff_; ++n) out(base + off + n * stride) = res(n);
    }
  }
  psi_.swap(out);
}

void FockRegister::apply_two_mode(const Eigen::MatrixXcd& u, int mode_a,
                                  int mode_b) {
  if (mode_a == mode_b) throw std::invalid_argument("need two distinct modes");
  if (mode_a < 0 || mode_a >= n_total_ || mode_b < 0 || mode_b >= n_total_) {
    throw std::out_of_range("mode out of range");
  }
  const long dim = psi_.size();
  const int c = cutoff_;
  long stride_a = 1, stride_b = 1;
  for (int m = n_total_ - 1; m > mode_a; --m) stride_a *= c;
  for (int m = n_total_ - 1; m > mode_b; --m) stride_b *= c;

  // base indices with the digits of modes a and b set to zero
  const long n_rep = dim / (long(c) * c);
  std::vector<long> reps;
  reps.reserve(n_rep);
  for (long idx = 0; idx < dim; ++idx) {
    if ((idx / stride_a) % c == 0 && (idx / stride_b) % c == 0) {
      reps.push_back(idx);
    }
  }

  // gather the (a, b) planes into columns, one dense product, scatter back
  Eigen::MatrixXcd planes(c * c, n_rep);
  for (long rcol = 0; rcol < n_rep; ++rcol) {
    const long base = reps[rcol];
    for (int na = 0; na < c; ++na)
      for (int nb = 0; nb < c; ++nb)
        planes(na * c + nb, rcol) = psi_(base + na * stride_a + nb * stride_b);
  }
  planes = (u * planes).eval();
  for (long rcol = 0; rcol < n_rep; ++rcol) {
    const long base = reps[rcol];
    for (int na = 0; na < c; ++na)
      for (int nb = 0; nb < c; ++nb)
        psi_(base + na * stride_a + nb * stride_b) = planes(na * c + nb, rcol);
  }
}

void FockRegister::apply_loss(double eta, int mode) {
  if (eta < 0.0 || eta > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  // append a vacuum environment mode
  const long dim = psi_.size();
  Eigen::VectorXcd grown = Eigen::VectorXcd::Zero(dim * cutoff_);
  for (long i = 0; i < dim; ++i) grown(i * cutoff_) = psi_(i);
  psi_.swap(grown);
  n_total_ += 1;
  apply_two_mode(u_beamsplitter(eta, cutoff_), mode, n_total_ - 1);
}

double FockRegister::tail_mass() const {
  double total = 0.0;
  const long dim = psi_.size();
  for (int m = 0; m < n_total_; ++m) {
    long stride = 1;
    for (int k = n_total_ - 1; k > m; --k) stride *= cutoff_;
    double mass = 0.0;
    for (long idx = 0; idx < dim; ++idx) {
      const int digit = static_cast<int>((idx / stride) % cutoff_);
      if (digit >= cutoff_ - 2) mass += std::norm(psi_(idx));
    }
    total += mass;
  }
  return total;
}

Eigen::MatrixXcd FockRegister::system_density() const {
  long dsys = 1, denv = 1;
  for (int m = 0; m < n_sys_; ++m) dsys *= cutoff_;
  for (int m = n_sys_; m < n_total_; ++m) denv *= cutoff_;
  Eigen::Map<const Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(psi_.data(), dsys, denv);
  return m * m.adjoint();
}

Eigen::VectorXcd FockRegister::apply_factor(const Eigen::VectorXcd& v,
                                            const LadderFactor& f) const {
  const long dim = v.size();
  long stride = 1;
  for (int m = n_total_ - 1; m > f.mode; --m) stride *= cutoff_;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (long idx = 0; idx < dim; ++idx) {
    const int n = static_cast<int>((idx / stride) % cutoff_);
    if (f.dagger) {
      if (n + 1 < cutoff_) {
        out(idx + stride) += std::sqrt(double(n + 1)) * v(idx);
      }
    } else if (n > 0) {
      out(idx - stride) += std::sqrt(double(n)) * v(idx);
    }
  }
  return out;
}

Eigen::VectorXcd FockRegister::apply_poly(const LadderPoly& poly) const {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(psi_.size());
  for (const auto& t : poly.terms) {
    Eigen::VectorXcd v = psi_;
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      v = apply_factor(v, *it);
    }
    acc += t.coeff * v;
  }
  return acc;
}

Cplx FockRegister::expect(const LadderPoly& poly) const {
  return psi_.dot(apply_poly(poly));
}

std::pair<double, double> FockRegister::moments(const LadderPoly& poly) const {
  const Eigen::VectorXcd v = apply_poly(poly);
  const Cplx mean = psi_.dot(v);
  if (std::abs(mean.imag()) > 1e-8) {
    throw std::invalid_argument("moments: polynomial is not Hermitian");
  }
  const double m2 = v.squaredNorm();
  return {mean.real(), m2 - mean.real() * mean.real()};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> FockRegister::quadrature_moments()
    const {
  const int n = n_sys_;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::VectorXcd> rv(2 * n);
  for (int m = 0; m < n; ++m) {
    LadderPoly x(n), p(n);
    x.add(s, {annihilate(m)}).add(s, {create(m)});
    p.add(Cplx(0, -s), {annihilate(m)}).add(Cplx(0, s), {create(m)});
    rv[m] = apply_poly(x);
    rv[m + n] = apply_poly(p);
  }
  Eigen::VectorXd d(2 * n);
  for (int i = 0; i < 2 * n; ++i) d(i) = psi_.dot(rv[i]).real();
  Eigen::MatrixXd gamma(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      gamma(i, j) = 2.0 * (rv[i].dot(rv[j]).real() - d(i) * d(j));
    }
  }
  return {d, 0.5 * (gamma + gamma.transpose())};
}

// --- scheme pipelines -----------------------------------------------------

FockRegister oracle_register(const SchemeConfig& cfg, double phi, int cutoff) {
  cfg.validate();
  const int c = cutoff;
  const double r = cfg.r, alpha = cfg.alpha, eta = cfg.eta;
  switch (cfg.scheme) {
    case Scheme::ancilla_tmsv: {
      FockRegister reg(3, c);
      reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
      reg.apply_two_mode(u_beamsplitter(0.5, c), 2, 1);
      reg.apply_one_mode(u_phase(phi, c), 2);
      if (eta < 1.0) {
        reg.apply_loss(eta, 1);
        reg.apply_loss(eta, 2);
      }
      return reg;
    }
    case Scheme::hybrid: {
      FockRegister reg(3, c);
      reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
      reg.apply_one_mode(u_displacement(alpha, c), 2);
      reg.apply_two_mode(u_beamsplitter(0.5, c), 2, 1);
      reg.apply_one_mode(u_phase(phi, c), 2);
      if (eta < 1.0) {
        reg.apply_loss(eta, 1);
        reg.apply_loss(eta, 2);
      }
      return reg;
    }
    case Scheme::caves: {
      FockRegister reg(2, c);
      reg.apply_one_mode(u_one_mode_squeezer(-r, c), 0);
      reg.apply_one_mode(u_displacement(alpha, c), 1);
      reg.apply_two_mode(u_beamsplitter(0.5, c), 0, 1);
      reg.apply_one_mode(u_phase(phi, c), 1);
      if (eta < 1.0) {
        reg.apply_loss(eta, 0);
        reg.apply_loss(eta, 1);
      }
      return reg;
    }
    case Scheme::su11_with_bs:
    case Scheme::su11_without_bs: {
      FockRegister reg(2, c);
      reg.apply_two_mode(u_two_mode_squeezer(r, c), 0, 1);
      if (cfg.scheme == Scheme::su11_with_bs) {
        reg.apply_two_mode(u_beamsplitter(0.5, c), 0, 1);
      }
      reg.apply_one_mode(u_phase(phi, c), 1);
      if (eta < 1.0) {
        reg.apply_loss(eta, 0);
        reg.apply_loss(eta, 1);
      }
      return reg;
    }
    case Scheme::coherent_benchmark: {
      FockRegister reg(2, c);
      reg.apply_one_mode(u_displacement(alpha, c), 0);
      reg.apply_two_mode(u_beamsplitter(0.5, c), 0, 1);
      reg.apply_one_mode(u_phase(phi, c), 1);
      if (eta < 1.0) {
        reg.apply_loss(eta, 0);
        reg.apply_loss(eta, 1);
      }
      return reg;
    }
  }
  throw std::invalid_argument("unknown scheme enum value");
}

FockState oracle_build(const SchemeConfig& cfg, double phi, int cutoff,
                       double tail_threshold) {
  FockRegister reg = oracle_register(cfg, phi, cutoff);
  const double tail = reg.tail_mass();
  if (tail > tail_threshold) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "oracle truncation unreliable: tail mass %.3e exceeds "
                  "threshold %.3e (cutoff %d)",
                  tail, tail_threshold, cutoff);
    throw std::runtime_error(msg);
  }
  FockState out;
  out.rho = reg.system_density();
  out.cutoff = cutoff;
  out.modes = reg.system_modes();
  out.tail_mass = tail;
  return out;
}

double oracle_qfi(const SchemeConfig& cfg, double phi, double dphi, int cutoff,
                  double tail_threshold) {
  if (dphi <= 0.0) throw std::invalid_argument("oracle_qfi: dphi must be > 0");
  const FockState sm = oracle_build(cfg, phi - dphi / 2, cutoff, tail_threshold);
  const FockState sp = oracle_build(cfg, phi + dphi / 2, cutoff, tail_threshold);
  const FockState s0 = oracle_build(cfg, phi, cutoff, tail_threshold);

  Eigen::MatrixXcd vecs = s0.rho;
  const Eigen::VectorXd lam = detail::hermitian_eig_inplace(vecs);
  const Eigen::MatrixXcd drho = (sp.rho - sm.rho) / dphi;
  const Eigen::MatrixXcd t = vecs.adjoint() * drho * vecs;

  double j = 0.0;
  const int dim = static_cast<int>(lam.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const double denom = lam(a) + lam(b);
      if (denom > 1e-12) j += 2.0 * std::norm(t(a, b)) / denom;
    }
  }
  return j;
}

double oracle_fidelity(const FockState& a, const FockState& b) {
  if (a.rho.rows() != b.rho.rows()) {
    throw std::invalid_argument("oracle_fidelity: dimension mismatch");
  }
  Eigen::MatrixXcd vecs = a.rho;
  Eigen::VectorXd lam = detail::hermitian_eig_inplace(vecs);
  if (lam.minCoeff() < -1e-8) {
    throw std::invalid_argument("oracle_fidelity: state not PSD");
  }
  // clamp tiny eigenvalues before the square root: sqrt amplifies their
  // roundoff to sqrt(eps)
  for (int i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) > 1e-14 ? std::sqrt(lam(i)) : 0.0;
  }
  const Eigen::MatrixXcd root = vecs * lam.asDiagonal() * vecs.adjoint();
  Eigen::MatrixXcd inner = root * b.rho * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const Eigen::VectorXd lam2 = detail::hermitian_eig_inplace(inner);
  if (lam2.minCoeff() < -1e-8) {
    throw std::invalid_argument("oracle_fidelity: inner matrix not PSD");
  }
  // the inner eigenvalues are products of state eigenvalues; only negatives
  // are roundoff
  double f = 0.0;
  for (int i = 0; i < lam2.size(); ++i) {
    if (lam2(i) > 0.0) f += std::sqrt(lam2(i));
  }
  return f;
}

namespace {

// A degree-<=2 ladder monomial maps each basis state to at most one other:
// follow that path instead of materializing the matrix.
struct BasisPath {
  long target = -1;  // -1 once truncated away
  Cplx coeff = 1.0;
};

BasisPath walk_term(const LadderTerm& term, long idx, int modes, int cutoff) {
  BasisPath path;
  path.target = idx;
  path.coeff = term.coeff;
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    long stride = 1;
    for (int k = modes - 1; k > it->mode; --k) stride *= cutoff;
    const int n = static_cast<int>((path.target / stride) % cutoff);
    if (it->dagger) {
      if (n + 1 >= cutoff) return {-1, 0.0};
      path.coeff *= std::sqrt(double(n + 1));
      path.target += stride;
    } else {
      if (n == 0) return {-1, 0.0};
      path.coeff *= std::sqrt(double(n));
      path.target -= stride;
    }
  }
  return path;
}

}  // namespace

std::pair<double, double> oracle_moments(const LadderPoly& poly,
                                         const FockState& s) {
  long dim = 1;
  for (int m = 0; m < s.modes; ++m) dim *= s.cutoff;
  if (dim != s.rho.rows() || poly.n_modes != s.modes) {
    throw std::invalid_argument("oracle_moments: dimension mismatch");
  }
  Cplx mean = 0.0, m2 = 0.0;
  for (long col = 0; col < dim; ++col) {
    for (const auto& t1 : poly.terms) {
      const BasisPath p1 = walk_term(t1, col, s.modes, s.cutoff);
      if (p1.target < 0) continue;
      mean += p1.coeff * s.rho(col, p1.target);
      for (const auto& t2 : poly.terms) {
        const BasisPath p2 = walk_term(t2, p1.target, s.modes, s.cutoff);
        if (p2.target < 0) continue;
        m2 += p1.coeff * p2.coeff * s.rho(col, p2.target);
      }
    }
  }
  if (std::abs(mean.imag()) > 1e-8) {
    throw std::invalid_argument("oracle_moments: polynomial is not Hermitian");
  }
  return {mean.real(), m2.real() - mean.real() * mean.real()};
}

}  // namespace gqm::fock
