#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corot::cli {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  std::size_t oracle_samples = 1000;
  std::uint64_t seed = 20011216;
};

/// Table reproduction, order-cancellation, structural, figure-level and
/// oracle checks, plus the library invariants. Deterministic for a seed.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace corot::cli
