#pragma once

#include <string>
#include <vector>

namespace dimlab::verify {

struct CheckResult {
  std::string name;
  std::string description;
  bool pass = false;
  double observed = 0.0;  // worst observed discrepancy (or fit statistic)
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int threads = 0;
  // Harness mutation hook: replaces the invariant intensity sigma/m by
  // sigma/(2m) inside the invariance check, which must then fail.
  bool corrupt_invariant = false;
  // Subset of check names to run; empty means all.
  std::vector<std::string> only;
};

std::vector<std::string> check_names();

// Runs the selected checks; each result records the worst observation
// against its pinned tolerance.
std::vector<CheckResult> run_checks(const VerifyOptions& opts = {});

}  // namespace dimlab::verify
