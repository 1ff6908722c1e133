#include <cmath>
#include <random>

#include <doctest.h>

#include "gqm/gaussian.hpp"

using namespace gqm;

namespace {

// random passive+active circuit for property checks
SymplecticOp random_circuit(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  SymplecticOp op{Mat::Identity(2 * n, 2 * n), Vec::Zero(2 * n)};
  for (int step = 0; step < 6; ++step) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    switch (step % 4) {
      case 0: op = two_mode_squeezer(0.4 * angle(rng), a, b, n) * op; break;
      case 1: op = beamsplitter_5050(a, b, n) * op; break;
      case 2: op = phase_shifter(angle(rng), a, n) * op; break;
      case 3: op = one_mode_squeezer(0.5 * angle(rng), b, n) * op; break;
    }
  }
  return op;
}

}  // namespace

TEST_CASE("vacuum state") {
  const GaussianState one = vacuum(1);
  CHECK(one.d.isZero(0.0));
  CHECK(one.gamma.isIdentity(0.0));
  const GaussianState three = vacuum(3);
  CHECK(three.d.size() == 6);
  CHECK(three.gamma.isIdentity(0.0));
  CHECK(mean_photon(vacuum(2)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(vacuum(0), std::invalid_argument);
}

TEST_CASE("phase shifter") {
  CHECK(phase_shifter(0.0, 0, 2).S.isIdentity(1e-15));
  CHECK((phase_shifter(2.0 * M_PI, 0, 1).S - Mat::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // rotation of a coherent amplitude; the sign is the oracle-pinned one
  GaussianState s = apply(displacement(1.0, 0, 1), vacuum(1));
  s = apply(phase_shifter(M_PI / 2, 0, 1), s);
  CHECK(s.d(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.d(1) == doctest::Approx(-std::sqrt(2.0)));
  CHECK_THROWS_AS(phase_shifter(0.1, 2, 2), std::out_of_range);
}

TEST_CASE("balanced beamsplitter") {
  CHECK_THROWS_AS(beamsplitter_5050(0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(beamsplitter_5050(0, 3, 2), std::out_of_range);

  SUBCASE("vacuum stays vacuum") {
    const GaussianState s = apply(beamsplitter_5050(0, 1, 2), vacuum(2));
    CHECK(s.gamma.isIdentity(1e-14));
    CHECK(s.d.isZero(1e-14));
  }
  SUBCASE("coherent input splits evenly") {
    const double alpha = 0.9;
    GaussianState s = apply(displacement(alpha, 0, 2), vacuum(2));
    s = apply(beamsplitter_5050(0, 1, 2), s);
    CHECK(mean_photon(s, {0}) == doctest::Approx(alpha * alpha / 2).epsilon(1e-12));
    CHECK(mean_photon(s, {1}) == doctest::Approx(alpha * alpha / 2).epsilon(1e-12));
  }
  SUBCASE("applied twice gives mode swap with signs") {
    const SymplecticOp bs = beamsplitter_5050(0, 1, 2);
    const Mat s2 = (bs * bs).S;
    Mat expect = Mat::Zero(4, 4);
    // b_0 -> b_1, b_1 -> -b_0
    expect(0, 1) = 1.0;
    expect(1, 0) = -1.0;
    expect(2, 3) = 1.0;
    expect(3, 2) = -1.0;
    CHECK((s2 - expect).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("one-mode squeezer") {
  CHECK(one_mode_squeezer(0.0, 0, 1).S.isIdentity(1e-15));
  const GaussianState s = apply(one_mode_squeezer(0.5, 0, 1), vacuum(1));
  CHECK(mean_photon(s) == doctest::Approx(std::sinh(0.5) * std::sinh(0.5))
                              .epsilon(1e-12));
  const SymplecticOp inv =
      one_mode_squeezer(-0.7, 0, 1) * one_mode_squeezer(0.7, 0, 1);
  CHECK((inv.S - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-mode squeezer") {
  CHECK(two_mode_squeezer(0.0, 0, 1, 2).S.isIdentity(1e-15));
  CHECK_THROWS_AS(two_mode_squeezer(0.3, 1, 1, 2), std::invalid_argument);

  const double r = 0.5;
  const GaussianState s = apply(two_mode_squeezer(r, 0, 1, 2), vacuum(2));
  const double sh2 = std::sinh(r) * std::sinh(r);
  CHECK(mean_photon(s, {0}) == doctest::Approx(sh2).epsilon(1e-12));
  CHECK(mean_photon(s, {1}) == doctest::Approx(sh2).epsilon(1e-12));
  CHECK(mean_photon(s) == doctest::Approx(2 * sh2).epsilon(1e-12));

  // cross-block signs pinned by the Fock oracle at r = 0.5
  CHECK(s.gamma(0, 1) == doctest::Approx(-std::sinh(1.0)).epsilon(1e-12));
  CHECK(s.gamma(2, 3) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
  CHECK(s.gamma(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
  CHECK(s.gamma(0, 2) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("displacement") {
  CHECK(displacement(0.0, 0, 1).shift.isZero(0.0));
  const GaussianState s = apply(displacement(1.0, 0, 1), vacuum(1));
  CHECK(s.d(0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.gamma.isIdentity(1e-15));
  const GaussianState c = apply(displacement(Cplx(0.3, -1.1), 0, 1), vacuum(1));
  CHECK(mean_photon(c) == doctest::Approx(0.3 * 0.3 + 1.1 * 1.1).epsilon(1e-12));
}

TEST_CASE("apply and composition") {
  std::mt19937 rng(12345);
  const SymplecticOp a = random_circuit(rng, 3);
  const SymplecticOp b = random_circuit(rng, 3);
  const GaussianState start = apply(displacement(0.7, 1, 3), vacuum(3));
  const GaussianState seq = apply(a, apply(b, start));
  const GaussianState composed = apply(a * b, start);
  CHECK((seq.d - composed.d).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((seq.gamma - composed.gamma).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(apply(beamsplitter_5050(0, 1, 2), vacuum(3)),
                  std::invalid_argument);
}

TEST_CASE("loss channel") {
  const GaussianState tmsv = apply(two_mode_squeezer(0.8, 0, 1, 2), vacuum(2));

  SUBCASE("eta = 1 is the identity") {
    const GaussianState s = apply_loss({1.0, {0, 1}}, tmsv);
    CHECK((s.gamma - tmsv.gamma).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("eta = 0 maps to vacuum") {
    const GaussianState s = apply_loss({0.0, {0, 1}}, tmsv);
    CHECK(s.gamma.isIdentity(1e-14));
    CHECK(s.d.isZero(1e-14));
  }
  SUBCASE("half loss on a coherent state") {
    GaussianState s = apply(displacement(1.0, 0, 1), vacuum(1));
    s = apply_loss({0.5, {0}}, s);
    CHECK(s.d(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.gamma.isIdentity(1e-14));
  }
  CHECK_THROWS_AS(apply_loss({1.5, {0}}, tmsv), std::invalid_argument);
}

TEST_CASE("mean photon number") {
  GaussianState s = apply(displacement(1.3, 0, 1), vacuum(1));
  CHECK(mean_photon(s) == doctest::Approx(1.69).epsilon(1e-12));

  SUBCASE("invariant under passive optics, additive over modes") {
    std::mt19937 rng(777);
    GaussianState probe = vacuum(3);
    probe = apply(two_mode_squeezer(0.6, 0, 1, 3), probe);
    probe = apply(displacement(Cplx(0.4, 0.2), 2, 3), probe);
    const double before = mean_photon(probe);
    const double parts = mean_photon(probe, {0}) + mean_photon(probe, {1}) +
                         mean_photon(probe, {2});
    CHECK(before == doctest::Approx(parts).epsilon(1e-12));
    for (int trial = 0; trial < 5; ++trial) {
      GaussianState rotated = apply(
          phase_shifter(0.3 + trial, trial % 3, 3), probe);
      rotated = apply(beamsplitter_5050((trial + 1) % 3, trial % 3, 3), rotated);
      CHECK(mean_photon(rotated) == doctest::Approx(before).epsilon(1e-12));
    }
  }
}

TEST_CASE("reduce") {
  const GaussianState tmsv = apply(two_mode_squeezer(0.5, 0, 1, 2), vacuum(2));
  SUBCASE("keep all is the identity") {
    const GaussianState s = reduce(tmsv, {0, 1});
    CHECK((s.gamma - tmsv.gamma).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("half of an entangled pair is thermal") {
    const GaussianState s = reduce(tmsv, {0});
    CHECK((s.gamma - std::cosh(1.0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff()
          < 1e-12);
  }
  SUBCASE("product state reduces to the factor") {
    GaussianState prod = vacuum(2);
    prod = apply(one_mode_squeezer(0.4, 0, 2), prod);
    prod = apply(displacement(0.8, 1, 2), prod);
    const GaussianState s = reduce(prod, {1});
    const GaussianState direct = apply(displacement(0.8, 0, 1), vacuum(1));
    CHECK((s.gamma - direct.gamma).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((s.d - direct.d).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(reduce(tmsv, {}), std::invalid_argument);
}

TEST_CASE("symplectic invariant and physicality are preserved") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const SymplecticOp op = random_circuit(rng, n);
    const Mat omega = symplectic_form(n);
    CHECK((op.S * omega * op.S.transpose() - omega).cwiseAbs().maxCoeff()
          < 1e-10);
    GaussianState s = apply(op, vacuum(n));
    CHECK_NOTHROW(s.check_valid());
    s = apply_loss({0.3 + 0.1 * (trial % 5), {0}}, s);
    CHECK_NOTHROW(s.check_valid());
  }
}

TEST_CASE("symplectic spectrum and purity") {
  CHECK((symplectic_eigenvalues(Mat::Identity(4, 4)) - Vec::Ones(2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const GaussianState tmsv = apply(two_mode_squeezer(0.9, 0, 1, 2), vacuum(2));
  CHECK((symplectic_eigenvalues(tmsv.gamma) - Vec::Ones(2)).cwiseAbs().maxCoeff()
        < 1e-10);
  CHECK(is_pure(tmsv));
  const GaussianState lossy = apply_loss({0.6, {0}}, tmsv);
  CHECK(symplectic_eigenvalues(lossy.gamma).maxCoeff() > 1.0 + 1e-6);
  CHECK_FALSE(is_pure(lossy));
}
