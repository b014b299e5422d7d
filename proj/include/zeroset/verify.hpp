#pragma once

// The invariant suite behind `zeroset verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace zeroset {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  // Audits and trend reports are informational and never fail the suite.
  bool enforced = true;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;  // enforced checks that failed
};

VerifyReport run_verify(std::uint64_t seed = 1);

}  // namespace zeroset
