#include <cmath>

#include <doctest.h>

#include "gqm/fidelity.hpp"
#include "gqm/fock.hpp"
#include "gqm/observable.hpp"

using namespace gqm;

TEST_CASE("truncated ladder algebra") {
  const int c = 12;
  const Eigen::MatrixXcd a = fock::annihilation_op(c);
  const Eigen::MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
  // canonical commutator away from the truncation boundary
  for (int n = 0; n < c - 2; ++n) {
    CHECK(comm(n, n).real() == doctest::Approx(1.0).epsilon(1e-14));
  }
  LadderPoly num(1);
  num.add(1.0, {create(0), annihilate(0)});
  const fock::FockOperator op = fock::ladder_matrix(num, c);
  for (int n = 0; n < c; ++n) {
    CHECK(op.data(n, n).real() == doctest::Approx(double(n)));
  }
}

TEST_CASE("pipeline states") {
  SUBCASE("empty pipeline is the vacuum projector") {
    const fock::FockState s =
        fock::oracle_build({Scheme::caves, 0.0, 0.0, 1.0, 0.0}, 0.4, 8);
    CHECK(s.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.tail_mass < 1e-12);
  }
  SUBCASE("entangled source has the geometric pair distribution") {
    const int c = 25;
    const double r = 0.5;
    const double lam = std::tanh(r) * std::tanh(r);
    const fock::FockState s =
        fock::oracle_build({Scheme::su11_without_bs, r, 0.0, 1.0, 0.0}, 0.0, c);
    for (int n = 0; n < 6; ++n) {
      const int idx = n * c + n;  // |n, n>
      CHECK(s.rho(idx, idx).real() ==
            doctest::Approx((1 - lam) * std::pow(lam, n)).epsilon(1e-10));
    }
    // off-diagonal pattern of a pure two-mode squeezed state
    CHECK(std::abs(s.rho(0, c + 1)) ==
          doctest::Approx((1 - lam) * std::tanh(r)).epsilon(1e-10));
  }
  SUBCASE("total loss leaves vacuum in the lossy arms") {
    const fock::FockState s =
        fock::oracle_build({Scheme::su11_without_bs, 0.4, 0.0, 0.0, 0.0}, 0.3, 14);
    // rho = thermal x thermal would still be diagonal; eta = 0 keeps no photons
    for (int i = 1; i < s.rho.rows(); ++i) {
      CHECK(std::abs(s.rho(i, i)) < 1e-10);
    }
  }
  SUBCASE("truncation tail is flagged") {
    CHECK_THROWS_AS(fock::oracle_build({Scheme::su11_without_bs, 1.5, 0.0, 1.0, 0.0},
                                       0.0, 8),
                    std::runtime_error);
  }
}

TEST_CASE("oracle information") {
  SUBCASE("coherent probe") {
    const double j =
        fock::oracle_qfi({Scheme::coherent_benchmark, 0.0, std::sqrt(2.0), 1.0, 0.0},
                         0.1, 1e-3, 20);
    CHECK(j == doctest::Approx(4.0).epsilon(1e-4));
  }
  SUBCASE("empty pipeline carries none") {
    const double j =
        fock::oracle_qfi({Scheme::caves, 0.0, 0.0, 1.0, 0.0}, 0.1, 1e-3, 8);
    CHECK(std::abs(j) < 1e-8);
  }
  SUBCASE("matches the covariance engine on a lossy pipeline") {
    SchemeConfig cfg{Scheme::ancilla_tmsv, 0.4, 0.0, 0.7, 0.0};
    const double j_fock = fock::oracle_qfi(cfg, 0.1, 1e-3, 12);
    const double j_gauss = qfi_fidelity(build_family(cfg), 0.1).value;
    CHECK(j_gauss == doctest::Approx(j_fock).epsilon(1e-3));
  }
}

TEST_CASE("oracle fidelity") {
  SchemeConfig cfg{Scheme::su11_without_bs, 0.5, 0.0, 0.6, 0.0};
  const fock::FockState a = fock::oracle_build(cfg, 0.0, 18);
  CHECK(fock::oracle_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-7));
  const fock::FockState b = fock::oracle_build(cfg, 0.35, 18);
  SchemeFamily fam = build_family(cfg);
  CHECK(fock::oracle_fidelity(a, b) ==
        doctest::Approx(gaussian_fidelity(fam(0.0), fam(0.35))).epsilon(1e-7));
  const fock::FockState small = fock::oracle_build(cfg, 0.0, 10, 1e-4);
  CHECK_THROWS_AS(fock::oracle_fidelity(a, small), std::invalid_argument);
}

TEST_CASE("oracle moments") {
  SUBCASE("photon statistics of a coherent state") {
    // displacement through a balanced splitter: mode 1 carries |alpha/sqrt2|^2
    SchemeConfig cfg{Scheme::coherent_benchmark, 0.0, 1.0, 1.0, 0.0};
    const fock::FockState s = fock::oracle_build(cfg, 0.0, 18);
    LadderPoly num(2);
    num.add(1.0, {create(1), annihilate(1)});
    const auto [mean, var] = fock::oracle_moments(num, s);
    CHECK(mean == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(var == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("pair correlator on the entangled source") {
    SchemeConfig cfg{Scheme::su11_without_bs, 0.5, 0.0, 1.0, 0.0};
    const fock::FockState s = fock::oracle_build(cfg, 0.9, 30);
    LadderPoly p(2);
    p.add(Cplx(0, 1), {create(0), create(1)});
    p.add(Cplx(0, -1), {annihilate(0), annihilate(1)});
    const auto [mean, var] = fock::oracle_moments(p, s);
    CHECK(mean == doctest::Approx(std::sinh(1.0) * std::sin(0.9)).epsilon(1e-9));
    const GaussianState g = build_family(cfg)(0.9);
    CHECK(var == doctest::Approx(variance(build_m12(), g)).epsilon(1e-8));
  }
  SUBCASE("non-Hermitian polynomial is rejected") {
    SchemeConfig cfg{Scheme::su11_without_bs, 0.3, 0.0, 1.0, 0.0};
    const fock::FockState s = fock::oracle_build(cfg, 0.5, 14);
    LadderPoly bad(2);
    bad.add(Cplx(0, 1), {annihilate(0), annihilate(1)});
    CHECK_THROWS_AS(fock::oracle_moments(bad, s), std::invalid_argument);
  }
}

TEST_CASE("register quadrature moments match the covariance engine") {
  const int c = 40;
  fock::FockRegister reg(2, c);
  reg.apply_two_mode(fock::u_two_mode_squeezer(0.5, c), 0, 1);
  const auto [d, gamma] = reg.quadrature_moments();
  const GaussianState g = apply(two_mode_squeezer(0.5, 0, 1, 2), vacuum(2));
  CHECK((d - g.d).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((gamma - g.gamma).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(reg.tail_mass() < 1e-12);
}
