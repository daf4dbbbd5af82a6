#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srbb {

/// One named verification outcome.
struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string detail;
};

/// Basis properties a to f for the n-qubit SRBB (per-element checks only for n >= 6).
std::vector<CheckResult> verify_basis(int n);

/// Reduced versus naive circuit, Z-factor diagonal identity and permutation identities.
std::vector<CheckResult> verify_equivalence(int n, int draws = 20, std::uint64_t seed = 1);

/// Gate tallies against the closed forms.
std::vector<CheckResult> verify_counts(int n);

}  // namespace srbb
