#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ordexp {

enum class VerifyLevel { Fast, Full };  // 10k vs 50k replications

struct SuiteResult {
  std::string name;
  std::vector<std::string> failures;
  std::string summary;
  bool passed() const { return failures.empty(); }
};

// Invariant suites: constants-vs-oracle, equivariance, dominance sweep,
// scheme KS checks, analytic-vs-MC agreement.
std::vector<SuiteResult> run_verification(VerifyLevel level, std::uint64_t seed);

}  // namespace ordexp
