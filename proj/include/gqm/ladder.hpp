#pragma once

#include <complex>
#include <vector>

namespace gqm {

/// One creation or annihilation operator.
struct LadderFactor {
  int mode;
  bool dagger;
};

inline LadderFactor annihilate(int mode) { return {mode, false}; }
inline LadderFactor create(int mode) { return {mode, true}; }

/// coeff * product of at most two ladder factors (in the given order).
struct LadderTerm {
  std::complex<double> coeff;
  std::vector<LadderFactor> factors;
};

/// Polynomial of degree <= 2 in mode operators.
struct LadderPoly {
  int n_modes = 0;
  std::vector<LadderTerm> terms;

  LadderPoly() = default;
  explicit LadderPoly(int n) : n_modes(n) {}

  LadderPoly& add(std::complex<double> coeff, std::vector<LadderFactor> factors);
  /// Hermitian conjugate (reverses factor order, daggers flip).
  LadderPoly dagger() const;
};

}  // namespace gqm
