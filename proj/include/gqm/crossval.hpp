#pragma once

#include <string>
#include <vector>

namespace gqm {

enum class CheckTier { quick, full };

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

/// Cross-validates the covariance-formalism engine against the truncated
/// Fock-space reference: state moments, observable means/variances, fidelity
/// and Fisher information, for every scheme at small squeezing.
/// cutoff_cap > 0 caps every oracle truncation (faster, may fail the
/// tolerances); exceptions inside a check group are reported as failures.
std::vector<CheckResult> run_oracle_checks(CheckTier tier, int cutoff_cap = 0);

/// One line per check plus a worst-deviation summary.
std::string render_report(const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace gqm
