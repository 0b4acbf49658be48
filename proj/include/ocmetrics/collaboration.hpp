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

#ifndef OCMETRICS_COLLABORATION_HPP_
#define OCMETRICS_COLLABORATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocmetrics/calibration.hpp"
#include "ocmetrics/core.hpp"

namespace ocmetrics {

/// Rule mapping a predictive probability to a review-priority score.
/// Toxicity review sends the highest predicted probabilities first
/// (u = p); uncertainty review sends the least confident first (u = p*(1-p)).
enum class ReviewStrategy {
  kToxicity,
  kUncertainty,
};

const char* to_string(ReviewStrategy strategy);

/// Ordered list of review fractions alpha, strictly increasing in [0,1].
class CapacityGrid {
 public:
  explicit CapacityGrid(std::vector<double> alphas);

  /// The default eight-point review-capacity grid.
  static CapacityGrid default_grid();

  std::span<const double> alphas() const { return alphas_; }
  std::size_t size() const { return alphas_.size(); }

 private:
  std::vector<double> alphas_;
};

/// Per-example review scores, order-aligned with the dataset.
std::vector<double> review_scores(const EvalSet& data, ReviewStrategy strategy);

/// Number of examples a capacity fraction alpha buys: floor(alpha*n), with a
/// relative tolerance absorbing the binary rounding of decimal fractions
/// (e.g. alpha=0.15, n=20 yields exactly 3).
std::size_t review_count(double alpha, std::size_t n);

/// The k = floor(alpha*n) indices with the largest review scores, in priority
/// order (descending score, ties broken by ascending index). Deterministic,
/// and nested across increasing alpha: the set for a smaller alpha is a
/// prefix of the set for a larger one.
std::vector<std::size_t> select_review_set(std::span<const double> scores,
                                           double alpha);

/// Accuracy of the collaborative system: reviewed examples count as correct
/// (the oracle fixes them), the rest contribute I(f(x)=y).
double oc_accuracy(const EvalSet& data, ReviewStrategy strategy, double alpha,
                   DecisionThreshold threshold);

/// Copy of the predictive scores with every reviewed example's score replaced
/// by its label, so that each threshold-indexed classifier built on the
/// scores classifies reviewed examples correctly.
std::vector<double> oracle_adjusted_scores(const EvalSet& data,
                                           std::span<const std::size_t> review_set);

struct OcAuc {
  double auroc = 0.0;
  double auprc = 0.0;
};

/// Oracle-collaborative AUROC/AUPRC: ranking metrics over the
/// oracle-adjusted scores. Reduces to the plain metrics at alpha=0; at
/// alpha=1 with both classes present the AUROC is 1. Throws
/// UndefinedMetricError on single-class input.
OcAuc oc_auc(const EvalSet& data, ReviewStrategy strategy, double alpha);

/// Slow verification oracle for oc_auc. The AUROC is rebuilt literally:
/// one classifier per distinct predictive-score threshold, each with its
/// reviewed examples' hard predictions corrected by the oracle, integrated
/// by the trapezoid rule. The AUPRC walks the corrected priority ranking
/// with a full precision recount at every positive's rank. O(n^2).
OcAuc oc_auc_threshold_oracle(const EvalSet& data, ReviewStrategy strategy,
                              double alpha);

/// Fraction of reviewed examples whose model prediction was wrong --
/// precision of the error-triage task. Undefined (throws) when the review
/// set is empty.
double review_efficiency(const EvalSet& data, ReviewStrategy strategy,
                         double alpha, DecisionThreshold threshold);

/// Fraction of all model errors that were reviewed -- recall of the
/// error-triage task. Undefined (throws) when the model makes no errors.
double review_effectiveness(const EvalSet& data, ReviewStrategy strategy,
                            double alpha, DecisionThreshold threshold);

/// A metric value that may be undefined for the given input; undefined cells
/// carry a reason and serialize as explicit nulls, never silently dropped.
struct MetricCell {
  std::optional<double> value;
  std::string reason;

  static MetricCell of(double v) { return {v, {}}; }
  static MetricCell undefined(std::string why) {
    return {std::nullopt, std::move(why)};
  }
  bool defined() const { return value.has_value(); }
};

/// One (strategy, alpha) cell of a sweep.
struct CollabResult {
  double alpha = 0.0;
  std::size_t k = 0;  // examples reviewed: floor(alpha*n)
  double oc_acc = 0.0;
  MetricCell oc_auroc;
  MetricCell oc_auprc;
  MetricCell review_efficiency;
  MetricCell review_effectiveness;
  double base_acc = 0.0;
  MetricCell base_auroc;
  MetricCell base_auprc;
};

/// Capacity-independent metrics of the dataset under the chosen threshold.
struct GlobalMetrics {
  double acc = 0.0;
  MetricCell auroc;
  MetricCell auprc;
  double brier = 0.0;
  double ece = 0.0;
  MetricCell calib_auroc;
  MetricCell calib_auprc;
  double threshold = 0.5;
  std::size_t ece_bins = 15;
};

struct StrategySweep {
  ReviewStrategy strategy = ReviewStrategy::kUncertainty;
  std::vector<CollabResult> results;  // one per grid point, in grid order
};

struct SweepReport {
  std::size_t n = 0;
  double prevalence = 0.0;
  GlobalMetrics globals;
  ReliabilityBins reliability;
  std::vector<StrategySweep> strategies;
};

/// Evaluates every (strategy, alpha) cell plus the global metrics. Review
/// sets reuse a single priority sort per strategy; cells are independent and
/// evaluated concurrently. Undefined metrics become null cells; results are
/// identical regardless of thread count.
SweepReport sweep(const EvalSet& data,
                  std::span<const ReviewStrategy> strategies,
                  const CapacityGrid& grid, DecisionThreshold threshold,
                  std::size_t ece_bins = 15);

}  // namespace ocmetrics

#endif  // OCMETRICS_COLLABORATION_HPP_
