#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpc {

struct SelfCheckOptions {
  std::uint64_t seed = 1;
  bool fast = false;
  // Test hook: shifts the dual value in the duality comparisons so the
  // failure path can be exercised deliberately. Leave at 0.
  double value_perturbation = 0.0;
};

struct SelfCheckSuite {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> messages;
};

struct SelfCheckReport {
  std::vector<SelfCheckSuite> suites;
  bool ok = false;
};

// Cross-verifies the solver stack on randomized instances: strong duality of
// the learning problem against the primal route, the expected-loss sandwich,
// and the concentration-interval coverage on the synthetic generator.
SelfCheckReport run_selfcheck(const SelfCheckOptions& options);

}  // namespace lpc
