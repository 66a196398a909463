#pragma once

// Randomized and exhaustive cross-checks run by `conlat verify`: closed
// forms against materialized lattices, the two congruence-lattice methods
// against each other, and Con(A) against the complete-sublattice test.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conlat {

/// Deliberate faults for checking that the suites catch errors.
enum class Mutation { kNone, kDtLeq, kDtMeet, kDtJoin, kSumMeet, kSumJoin, kTnaMeet, kTnaJoin, kEqJoin, kPrincipal };

std::optional<Mutation> mutation_from_string(std::string_view name);
std::vector<std::string> mutation_names();

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Random cases per suite. Zero skips everything.
  std::size_t samples = 40;
  Mutation mutation = Mutation::kNone;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  bool passed = true;
  /// First failure, with enough data to reproduce it.
  std::string counterexample;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool vacuous = false;

  bool passed() const {
    for (const auto& s : suites)
      if (!s.passed) return false;
    return true;
  }
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace conlat
