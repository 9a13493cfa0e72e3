#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "proxilift/space.hpp"

namespace proxilift {

struct PropertyTally {
  std::string name;
  int passed = 0;
  int failed = 0;
  /// Trials where the property does not apply (e.g. no selection exists).
  int skipped = 0;
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyTally> properties;
  /// One JSON object per failing trial: the generated case, a shrunken case
  /// that still fails, and the failing property.
  std::vector<std::string> counterexamples;
  double seconds = 0.0;

  bool ok() const;
};

/// cheney_wulbert, homogeneity, lift_norm, deutsch_roundtrip, duality,
/// distance_oracle
const std::vector<std::string>& suite_names();

/// Trial i draws from trial_rng(seed, i), so results do not depend on
/// evaluation order. Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed, const Tolerance& tol = {});

std::string to_json(const SuiteResult& result, bool with_timings = false);

}  // namespace proxilift
