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

#ifndef OCMETRICS_RANKING_HPP_
#define OCMETRICS_RANKING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ocmetrics {

struct CurvePoint {
  double x;  // FPR for ROC, recall for PR
  double y;  // TPR for ROC, precision for PR
};

/// A ranking curve sampled at every distinct score threshold, plus the
/// tie-aware scalar area of the corresponding metric.
struct RankedCurve {
  std::vector<CurvePoint> points;
  double area = 0.0;
};

/// Tie-aware AUROC: (concordant pairs + half the tied pairs) / (P*N),
/// computed in O(n log n) via midranks. Throws UndefinedMetricError unless
/// both classes are present; ValidationError on length mismatch.
double auroc(std::span<const double> scores,
             std::span<const std::uint8_t> labels);

/// Non-interpolated average precision. Examples are ranked by descending
/// score with ties broken by ascending index; AP is the mean over positives
/// of the precision at that positive's rank. Throws UndefinedMetricError when
/// no positive exists.
double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels);

/// Reference oracle: explicit O(P*N) pairwise concordance enumeration.
/// Intended for n up to a few thousand.
double brute_force_auroc(std::span<const double> scores,
                         std::span<const std::uint8_t> labels);

/// Reference oracle: selection-based ranking (no library sort) with a full
/// precision recount at every positive's rank. O(n^2).
double brute_force_ap(std::span<const double> scores,
                      std::span<const std::uint8_t> labels);

/// ROC curve with one point per distinct score threshold, anchored at (0,0)
/// and ending at (1,1); FPR is nondecreasing across points.
RankedCurve roc_curve(std::span<const double> scores,
                      std::span<const std::uint8_t> labels);

/// Precision-recall curve with one point per distinct score threshold;
/// recall runs from 0 to 1 across points.
RankedCurve pr_curve(std::span<const double> scores,
                     std::span<const std::uint8_t> labels);

namespace detail {

/// AUROC and AP from one shared sort. Fields are nullopt when the metric is
/// undefined for the input (missing class). All public entry points and the
/// collaborative fast paths funnel through here, which is what makes the
/// alpha=0 reduction of the oracle-collaborative AUC bit-exact.
struct BinaryRankMetrics {
  std::optional<double> auroc;
  std::optional<double> ap;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

BinaryRankMetrics rank_metrics(std::span<const double> scores,
                               std::span<const std::uint8_t> labels);

}  // namespace detail

}  // namespace ocmetrics

#endif  // OCMETRICS_RANKING_HPP_
