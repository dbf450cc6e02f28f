#pragma once

#include <string>
#include <vector>

namespace mems::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  // Test-only fault injection: bias added to the log factor feeding the
  // branch evaluations inside the shooting-equivalence check. Nonzero
  // values must make that check fail.
  double log_term_bias = 0.0;
  // The dynamics smoke checks cost a few seconds; callers may skip them.
  bool include_dynamics = true;
};

/// Runs the full cross-validation battery (closed forms against direct
/// integration, monotonicity suites, trichotomy counts, dynamics smoke).
std::vector<CheckResult> run_all(const Options& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace mems::verify
