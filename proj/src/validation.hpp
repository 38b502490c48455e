// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracle suites used by the acceptance run and `jacdep oracle`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jacdep {

struct OracleReport {
  std::string name;
  bool passed = false;
  std::string detail;  // one line, no trailing newline
  double seconds = 0.0;
};

/// Suite names in acceptance order: gaussian, moments, pilot, lmmse, map,
/// fronthaul, trend, pc, determinism.
const std::vector<std::string>& oracle_suites();
bool is_oracle_suite(const std::string& name);

/// Throws Error(kRangeError) for an unknown suite. `workers` only affects the
/// campaign-based suites (trend, determinism uses its own pair of counts).
OracleReport run_oracle(const std::string& name, int workers = 1);

}  // namespace jacdep
