// Extended-precision kernel for the mixed-state Gaussian fidelity.
//
// The auxiliary-matrix closed form contains factors (w + sqrt(w^2 - 1)) with
// w -> 1 whenever a mode of the state pair approaches purity. The branch
// point amplifies eigenvalue roundoff by ~sqrt(eps), which in double
// precision destroys the 1e-12-level accuracy the finite-difference Fisher
// information needs. All the matrices involved are at most 8x8, so the whole
// formula is evaluated here in __float128.

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <quadmath.h>

#include "gqm/gaussian.hpp"

namespace gqm::detail {

namespace {

using qf = __float128;

struct QC {  // complex in quad precision
  qf re = 0, im = 0;
};

QC operator+(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
QC operator-(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
QC operator*(QC a, QC b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QC operator/(QC a, QC b) {
  qf den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den,
          (a.im * b.re - a.re * b.im) / den};
}
qf qabs(QC a) { return sqrtq(a.re * a.re + a.im * a.im); }

QC qsqrt(QC z) {
  qf m = qabs(z);
  if (m == 0) return {0, 0};
  // m can round below |re|; clamp before the square roots
  qf re = sqrtq(std::max((m + z.re) / 2, qf(0)));
  qf im = sqrtq(std::max((m - z.re) / 2, qf(0)));
  if (z.im < 0) im = -im;
  return {re, im};
}

// Dense quad matrix, row-major.
struct QMat {
  int n = 0;
  std::vector<qf> a;
  explicit QMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, qf(0)) {}
  qf& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  qf operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

QMat qidentity(int n) {
  QMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat qmul(const QMat& x, const QMat& y) {
  QMat z(x.n);
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.n; ++k) {
      qf v = x(i, k);
      if (v == qf(0)) continue;
      for (int j = 0; j < x.n; ++j) z(i, j) += v * y(k, j);
    }
  }
  return z;
}

qf qtrace(const QMat& x) {
  qf t = 0;
  for (int i = 0; i < x.n; ++i) t += x(i, i);
  return t;
}

// LU with partial pivoting; returns det, fills inverse (optional) and can
// solve one right-hand side.
struct QLu {
  QMat lu;
  std::vector<int> piv;
  int sign = 1;

  explicit QLu(const QMat& m) : lu(m), piv(m.n) {
    const int n = m.n;
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int col = 0; col < n; ++col) {
      int best = col;
      qf mag = fabsq(lu(col, col));
      for (int r = col + 1; r < n; ++r) {
        if (fabsq(lu(r, col)) > mag) {
          mag = fabsq(lu(r, col));
          best = r;
        }
      }
      if (mag == qf(0)) throw std::runtime_error("singular matrix in fidelity kernel");
      if (best != col) {
        for (int j = 0; j < n; ++j) std::swap(lu(best, j), lu(col, j));
        std::swap(piv[best], piv[col]);
        sign = -sign;
      }
      for (int r = col + 1; r < n; ++r) {
        qf f = lu(r, col) / lu(col, col);
        lu(r, col) = f;
        for (int j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
      }
    }
  }

  qf det() const {
    qf d = sign;
    for (int i = 0; i < lu.n; ++i) d *= lu(i, i);
    return d;
  }

  std::vector<qf> solve(const std::vector<qf>& b) const {
    const int n = lu.n;
    std::vector<qf> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    return x;
  }

  QMat inverse() const {
    const int n = lu.n;
    QMat inv(n);
    std::vector<qf> e(n), col;
    for (int c = 0; c < n; ++c) {
      std::fill(e.begin(), e.end(), qf(0));
      e[c] = 1;
      col = solve(e);
      for (int r = 0; r < n; ++r) inv(r, c) = col[r];
    }
    return inv;
  }
};

// Characteristic polynomial x^n + c[0] x^{n-1} + ... + c[n-1] via the
// Faddeev-LeVerrier recurrence. Fine here: the matrix is O(1) in norm.
std::vector<qf> char_poly(const QMat& a) {
  const int n = a.n;
  std::vector<qf> c(n);
  QMat m = a;
  c[0] = -qtrace(m);
  for (int k = 1; k < n; ++k) {
    QMat shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 1];
    m = qmul(a, shifted);
    c[k] = -qtrace(m) / qf(k + 1);
  }
  return c;
}

// Durand-Kerner root finder for a monic polynomial with real coefficients.
// Trailing coefficients below the arithmetic noise floor are exact-zero
// roots: deflate them first, otherwise the iteration reports them at the
// sqrt-of-noise scale.
std::vector<QC> poly_roots(std::vector<qf> c) {
  std::vector<QC> roots;
  qf scale = 1;
  for (const qf& ck : c) scale = std::max(scale, fabsq(ck));
  while (!c.empty() && fabsq(c.back()) < qf(1e-30) * scale) {
    roots.push_back(QC{0, 0});
    c.pop_back();
  }
  const int n = static_cast<int>(c.size());
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(QC{-c[0], 0});
    return roots;
  }
  if (n == 2) {
    // stable quadratic formula; a double root here is exact, not a cluster
    const qf disc = c[0] * c[0] - 4 * c[1];
    if (disc >= qf(0)) {
      const qf root = sqrtq(disc);
      const qf big = -(c[0] + (c[0] >= qf(0) ? root : -root)) / 2;
      roots.push_back(QC{big, 0});
      roots.push_back(big != qf(0) ? QC{c[1] / big, 0} : QC{-c[0] / 2, 0});
    } else {
      const qf im = sqrtq(-disc) / 2;
      roots.push_back(QC{-c[0] / 2, im});
      roots.push_back(QC{-c[0] / 2, -im});
    }
    return roots;
  }

  auto eval = [&](QC x) {
    QC p{1, 0};
    for (int k = 0; k < n; ++k) p = p * x + QC{c[k], 0};
    return p;
  };
  qf radius = 1;
  for (const qf& ck : c) radius = std::max(radius, fabsq(ck));
  radius += 1;

  std::vector<QC> live(n);
  QC seed{qf(0.4), qf(0.9)};
  QC cur{radius, 0};
  for (int k = 0; k < n; ++k) {
    cur = cur * seed;
    live[k] = cur;
  }
  const auto finite = [](QC z) {
    return !isnanq(z.re) && !isnanq(z.im) && !isinfq(z.re) && !isinfq(z.im);
  };
  for (int iter = 0; iter < 600; ++iter) {
    qf worst = 0;
    for (int k = 0; k < n; ++k) {
      QC denom{1, 0};
      for (int j = 0; j < n; ++j) {
        if (j != k) denom = denom * (live[k] - live[j]);
      }
      QC delta = eval(live[k]) / denom;
      if (!finite(delta)) {
        // collided iterates (multiple root); nudge apart and retry
        live[k] = live[k] + QC{qf(1e-20) * (k + 1), qf(1e-20)};
        worst = std::max(worst, qf(1));
        continue;
      }
      live[k] = live[k] - delta;
      worst = std::max(worst, qabs(delta));
    }
    if (worst < qf(1e-35)) break;
  }
  roots.insert(roots.end(), live.begin(), live.end());
  return roots;
}

QMat to_quad(const gqm::Mat& m, qf scale) {
  QMat q(static_cast<int>(m.rows()));
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j) q(i, j) = qf(m(i, j)) * scale;
  return q;
}

QMat quad_omega(int n_modes) {
  QMat w(2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    w(m, m + n_modes) = 1;
    w(m + n_modes, m) = -1;
  }
  return w;
}

}  // namespace

double fidelity_mixed_quad(const Mat& gamma1, const Vec& d1, const Mat& gamma2,
                           const Vec& d2) {
  const int n = static_cast<int>(gamma1.rows()) / 2;
  const int dim = 2 * n;
  const QMat sig1 = to_quad(gamma1, qf(0.5));
  const QMat sig2 = to_quad(gamma2, qf(0.5));
  const QMat omega = quad_omega(n);

  QMat ssum(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) ssum(i, j) = sig1(i, j) + sig2(i, j);
  QLu lu_sum(ssum);

  // Vaux = Omega^T (sig1+sig2)^{-1} (Omega/4 + sig2 Omega sig1)
  QMat rhs = qmul(sig2, qmul(omega, sig1));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) rhs(i, j) += omega(i, j) / 4;
  QMat sol(dim);
  {
    std::vector<qf> col(dim);
    for (int c = 0; c < dim; ++c) {
      for (int r = 0; r < dim; ++r) col[r] = rhs(r, c);
      std::vector<qf> x = lu_sum.solve(col);
      for (int r = 0; r < dim; ++r) sol(r, c) = x[r];
    }
  }
  QMat omega_t(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) omega_t(i, j) = omega(j, i);
  QMat vaux = qmul(omega_t, sol);

  QMat w = qmul(vaux, omega);
  QMat w2 = qmul(w, w);
  QMat a = QLu(w2).inverse();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) /= 4;
    a(i, i) += 1;
  }

  // The spectrum of A carries each mode eigenvalue twice, so its
  // characteristic polynomial is the square of a degree-n polynomial q.
  // Root clusters of p are quartic and would cost half the mantissa even in
  // quad precision; the roots of q are at worst double.
  const std::vector<qf> p = char_poly(a);
  std::vector<qf> full(p.size() + 1);
  full[0] = 1;
  for (size_t i = 0; i < p.size(); ++i) full[i + 1] = p[i];
  std::vector<qf> q(n + 1);
  q[0] = 1;
  for (int k = 1; k <= n; ++k) {
    qf s = 0;
    for (int i = 1; i < k; ++i) s += q[i] * q[k - i];
    q[k] = (full[k] - s) / 2;
  }
  qf resid = 0;
  for (int k = 0; k <= 2 * n; ++k) {
    qf conv = 0;
    for (int i = std::max(0, k - n); i <= std::min(k, n); ++i) {
      conv += q[i] * q[k - i];
    }
    resid = std::max(resid, fabsq(conv - full[k]));
  }
  std::vector<QC> lam;
  if (resid < qf(1e-20)) {
    lam = poly_roots(std::vector<qf>(q.begin() + 1, q.end()));
  } else {
    lam = poly_roots(p);  // fall back to the full spectrum
  }
  QC prod{1, 0};
  for (QC l : lam) {
    // roots below the characteristic-polynomial noise floor are zeros whose
    // square roots would otherwise inject spurious ~1e-17 amplitudes
    if (qabs(l) < qf(1e-26)) l = QC{0, 0};
    prod = prod * (QC{1, 0} + qsqrt(l));
  }
  if (resid < qf(1e-20)) prod = prod * prod;  // each mode factor appears twice

  qf f4 = prod.re;
  for (int k = 0; k < dim; ++k) f4 *= 2;  // 2^{2n}
  f4 *= QLu(vaux).det();
  f4 /= lu_sum.det();
  if (f4 < qf(0)) f4 = 0;

  // mean contribution: exp(-1/4 delta^T (sig1+sig2)^{-1} delta)
  std::vector<qf> delta(dim);
  for (int i = 0; i < dim; ++i) delta[i] = qf(d2(i)) - qf(d1(i));
  std::vector<qf> x = lu_sum.solve(delta);
  qf quadform = 0;
  for (int i = 0; i < dim; ++i) quadform += delta[i] * x[i];

  qf f = sqrtq(sqrtq(f4)) * expq(-quadform / 4);
  return static_cast<double>(f);
}

double fidelity_overlap_quad(const Mat& gamma1, const Vec& d1, const Mat& gamma2,
                             const Vec& d2) {
  // sqrt(Tr[rho1 rho2]); valid when at least one state is pure.
  const int n = static_cast<int>(gamma1.rows()) / 2;
  const int dim = 2 * n;
  QMat gsum(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      gsum(i, j) = qf(gamma1(i, j)) + qf(gamma2(i, j));
  QLu lu(gsum);
  std::vector<qf> delta(dim);
  for (int i = 0; i < dim; ++i) delta[i] = qf(d2(i)) - qf(d1(i));
  std::vector<qf> x = lu.solve(delta);
  qf quadform = 0;
  for (int i = 0; i < dim; ++i) quadform += delta[i] * x[i];

  qf overlap = 1;
  for (int k = 0; k < n; ++k) overlap *= 4;  // 2^{2n}
  overlap /= lu.det();
  qf f = sqrtq(sqrtq(overlap)) * expq(-quadform / 2);
  return static_cast<double>(f);
}

}  // namespace gqm::detail
