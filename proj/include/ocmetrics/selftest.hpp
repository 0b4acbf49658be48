/*
 * Copyright 2026 The ocmetrics Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OCMETRICS_SELFTEST_HPP_
#define OCMETRICS_SELFTEST_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ocmetrics {

/// Randomized verification suites: fast metric paths against the brute-force
/// oracles, the oracle-collaborative AUC against its literal per-threshold
/// construction, and the exact accuracy decompositions.
struct SelftestConfig {
  std::uint64_t seed = 20260810;
  std::size_t ranking_trials = 300;        // n in [2,200], ties injected
  std::size_t oc_trials = 100;             // n in [5,200], random strategy/alpha
  std::size_t decomposition_trials = 300;  // n in [2,500], default grid
  double tolerance = 1e-12;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_error = 0.0;

  bool passed() const { return failures == 0; }
};

struct SelftestReport {
  std::vector<SuiteResult> suites;

  bool passed() const {
    for (const auto& s : suites) {
      if (!s.passed()) return false;
    }
    return true;
  }
};

SelftestReport run_selftest(const SelftestConfig& config = {});

}  // namespace ocmetrics

#endif  // OCMETRICS_SELFTEST_HPP_
