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

#include "ocmetrics/selftest.hpp"

#include <cmath>
#include <random>

#include "ocmetrics/collaboration.hpp"
#include "ocmetrics/core.hpp"
#include "ocmetrics/ranking.hpp"

namespace ocmetrics {

namespace {

class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive range
    return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
  }

  // Scores in [0,1] with ties injected on an interior grid (multiples of
  // 1/20 in [0.05, 0.95]), which keeps tie groups away from the substituted
  // extremes 0 and 1.
  std::vector<double> scores(std::size_t n) {
    std::vector<double> s(n);
    for (auto& v : s) {
      v = uniform() < 0.5
              ? static_cast<double>(index(1, 19)) / 20.0
              : uniform();
    }
    return s;
  }

  // Random labels; when forced, index 0 is positive and index 1 negative so
  // both classes are always present.
  std::vector<std::uint8_t> labels(std::size_t n, bool force_both_classes) {
    const double prevalence = 0.1 + 0.8 * uniform();
    std::vector<std::uint8_t> y(n);
    for (auto& v : y) v = uniform() < prevalence ? 1 : 0;
    if (force_both_classes && n >= 2) {
      y[0] = 1;
      y[1] = 0;
    }
    return y;
  }

  double alpha() {
    const double r = uniform();
    if (r < 0.1) return 0.0;
    if (r > 0.9) return 1.0;
    return uniform();
  }

 private:
  std::mt19937_64 engine_;
};

void record(SuiteResult& suite, double err, double tolerance) {
  if (err > suite.max_error) suite.max_error = err;
  if (!(err <= tolerance)) ++suite.failures;
}

SuiteResult ranking_suite(std::uint64_t seed, std::size_t trials,
                          double tolerance) {
  SuiteResult suite{"ranking vs brute-force oracles", trials, 0, 0.0};
  InstanceGen gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = gen.index(2, 200);
    const auto scores = gen.scores(n);
    const auto labels = gen.labels(n, /*force_both_classes=*/true);
    record(suite, std::abs(auroc(scores, labels) - brute_force_auroc(scores, labels)),
           tolerance);
    record(suite,
           std::abs(average_precision(scores, labels) - brute_force_ap(scores, labels)),
           tolerance);
  }
  return suite;
}

SuiteResult oc_auc_suite(std::uint64_t seed, std::size_t trials,
                         double tolerance) {
  SuiteResult suite{"oc-auc vs per-threshold construction", trials, 0, 0.0};
  InstanceGen gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = gen.index(5, 200);
    const auto probs = gen.scores(n);
    const auto labels = gen.labels(n, /*force_both_classes=*/true);
    const EvalSet data(labels, probs);
    const auto strategy = gen.uniform() < 0.5 ? ReviewStrategy::kToxicity
                                              : ReviewStrategy::kUncertainty;
    const double alpha = gen.alpha();
    const auto fast = oc_auc(data, strategy, alpha);
    const auto oracle = oc_auc_threshold_oracle(data, strategy, alpha);
    record(suite, std::abs(fast.auroc - oracle.auroc), tolerance);
    record(suite, std::abs(fast.auprc - oracle.auprc), tolerance);
  }
  return suite;
}

SuiteResult decomposition_suite(std::uint64_t seed, std::size_t trials,
                                double tolerance) {
  SuiteResult suite{"collaborative-accuracy decompositions", trials, 0, 0.0};
  InstanceGen gen(seed);
  const auto grid = CapacityGrid::default_grid();
  constexpr ReviewStrategy kStrategies[] = {ReviewStrategy::kToxicity,
                                            ReviewStrategy::kUncertainty};
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = gen.index(2, 500);
    const auto probs = gen.scores(n);
    const auto labels = gen.labels(n, /*force_both_classes=*/false);
    const EvalSet data(labels, probs);
    const DecisionThreshold threshold(0.05 + 0.9 * gen.uniform());

    std::size_t correct_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      correct_total += hard_prediction(probs[i], threshold) ==
                               static_cast<bool>(labels[i])
                           ? 1
                           : 0;
    }
    const double base_acc =
        static_cast<double>(correct_total) / static_cast<double>(n);

    for (const auto strategy : kStrategies) {
      const auto scores = review_scores(data, strategy);
      for (const double alpha : grid.alphas()) {
        const std::size_t k = review_count(alpha, n);
        const double oc = oc_accuracy(data, strategy, alpha, threshold);
        if (k == 0) {
          record(suite, std::abs(oc - base_acc), tolerance);
          continue;
        }
        const double re = review_efficiency(data, strategy, alpha, threshold);
        const double alpha_realized =
            static_cast<double>(k) / static_cast<double>(n);
        record(suite, std::abs(oc - (base_acc + alpha_realized * re)), tolerance);

        // Second decomposition: accuracy over the unreviewed remainder.
        const auto review = select_review_set(scores, alpha);
        std::vector<std::uint8_t> reviewed(n, 0);
        for (std::size_t idx : review) reviewed[idx] = 1;
        std::size_t correct_unreviewed = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (reviewed[i]) continue;
          correct_unreviewed += hard_prediction(probs[i], threshold) ==
                                        static_cast<bool>(labels[i])
                                    ? 1
                                    : 0;
        }
        double expected = alpha_realized;
        if (k < n) {
          const double acc_unreviewed = static_cast<double>(correct_unreviewed) /
                                        static_cast<double>(n - k);
          expected += acc_unreviewed * (static_cast<double>(n - k) /
                                        static_cast<double>(n));
        }
        record(suite, std::abs(oc - expected), tolerance);
      }
    }
  }
  return suite;
}

}  // namespace

SelftestReport run_selftest(const SelftestConfig& config) {
  SelftestReport report;
  if (config.ranking_trials > 0) {
    report.suites.push_back(
        ranking_suite(config.seed, config.ranking_trials, config.tolerance));
  }
  if (config.oc_trials > 0) {
    report.suites.push_back(
        oc_auc_suite(config.seed + 1, config.oc_trials, config.tolerance));
  }
  if (config.decomposition_trials > 0) {
    report.suites.push_back(decomposition_suite(
        config.seed + 2, config.decomposition_trials, config.tolerance));
  }
  return report;
}

}  // namespace ocmetrics
