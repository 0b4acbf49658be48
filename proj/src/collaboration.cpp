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

#include "ocmetrics/collaboration.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <utility>

#include "ocmetrics/detail/kernels.hpp"
#include "ocmetrics/ranking.hpp"

namespace ocmetrics {

namespace {

constexpr const char* kNeedBothClasses =
    "requires at least one positive and one negative label";
constexpr const char* kNeedPositive = "requires at least one positive label";
constexpr const char* kEmptyReview = "review set is empty (k = 0)";
constexpr const char* kNoErrors = "model makes no errors at this threshold";

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("review fraction must lie in [0,1], got " +
                          std::to_string(alpha));
  }
}

// Full priority permutation: indices ordered by descending review score,
// ties broken by ascending index. Every review set is a prefix of this.
std::vector<std::size_t> priority_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

std::vector<std::uint8_t> prediction_errors(const EvalSet& data,
                                            DecisionThreshold threshold) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  std::vector<std::uint8_t> errors(data.size());
  detail::parallel_transform(data.size(), [&](std::size_t i) {
    errors[i] = hard_prediction(probs[i], threshold) !=
                        static_cast<bool>(labels[i])
                    ? 1
                    : 0;
  });
  return errors;
}

std::size_t errors_in(std::span<const std::size_t> review_set,
                      std::span<const std::uint8_t> errors) {
  std::size_t count = 0;
  for (std::size_t idx : review_set) count += errors[idx];
  return count;
}

}  // namespace

const char* to_string(ReviewStrategy strategy) {
  switch (strategy) {
    case ReviewStrategy::kToxicity:
      return "toxicity";
    case ReviewStrategy::kUncertainty:
      return "uncertainty";
  }
  return "unknown";
}

CapacityGrid::CapacityGrid(std::vector<double> alphas)
    : alphas_(std::move(alphas)) {
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    check_alpha(alphas_[i]);
    if (i > 0 && !(alphas_[i] > alphas_[i - 1])) {
      throw ValidationError("capacity grid must be strictly increasing");
    }
  }
}

CapacityGrid CapacityGrid::default_grid() {
  return CapacityGrid({0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.15, 0.2});
}

std::vector<double> review_scores(const EvalSet& data, ReviewStrategy strategy) {
  const auto probs = data.probs();
  std::vector<double> scores(data.size());
  if (strategy == ReviewStrategy::kToxicity) {
    detail::parallel_transform(data.size(),
                               [&](std::size_t i) { scores[i] = probs[i]; });
  } else {
    detail::parallel_transform(data.size(), [&](std::size_t i) {
      scores[i] = probs[i] * (1.0 - probs[i]);
    });
  }
  return scores;
}

std::size_t review_count(double alpha, std::size_t n) {
  check_alpha(alpha);
  const double x = alpha * static_cast<double>(n);
  // Relative tolerance so decimal fractions realize their exact product
  // (0.15 * 20 must buy 3 reviews, not 2).
  const auto k = static_cast<std::size_t>(std::floor(x + x * 1e-12 + 1e-12));
  return std::min(k, n);
}

std::vector<std::size_t> select_review_set(std::span<const double> scores,
                                           double alpha) {
  const std::size_t k = review_count(alpha, scores.size());
  auto order = priority_order(scores);
  order.resize(k);
  return order;
}

double oc_accuracy(const EvalSet& data, ReviewStrategy strategy, double alpha,
                   DecisionThreshold threshold) {
  const auto scores = review_scores(data, strategy);
  const auto review = select_review_set(scores, alpha);
  const auto errors = prediction_errors(data, threshold);
  const std::size_t total_errors =
      detail::parallel_count(data.size(), [&](std::size_t i) {
        return errors[i] != 0;
      });
  const std::size_t correct_total = data.size() - total_errors;
  // Reviewed errors flip to correct; reviewed correct examples stay correct.
  const std::size_t numerator = correct_total + errors_in(review, errors);
  return static_cast<double>(numerator) / static_cast<double>(data.size());
}

std::vector<double> oracle_adjusted_scores(const EvalSet& data,
                                           std::span<const std::size_t> review_set) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  std::vector<double> adjusted(probs.begin(), probs.end());
  for (std::size_t idx : review_set) {
    if (idx >= adjusted.size()) {
      throw ValidationError("review index out of range", idx);
    }
    adjusted[idx] = static_cast<double>(labels[idx]);
  }
  return adjusted;
}

OcAuc oc_auc(const EvalSet& data, ReviewStrategy strategy, double alpha) {
  const auto scores = review_scores(data, strategy);
  const auto review = select_review_set(scores, alpha);
  const auto adjusted = oracle_adjusted_scores(data, review);
  const auto m = detail::rank_metrics(adjusted, data.labels());
  if (!m.auroc || !m.ap) {
    throw UndefinedMetricError(std::string("OC-AUC ") + kNeedBothClasses);
  }
  return {*m.auroc, *m.ap};
}

OcAuc oc_auc_threshold_oracle(const EvalSet& data, ReviewStrategy strategy,
                              double alpha) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  const std::size_t n = data.size();
  const std::size_t positives = data.positives();
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw UndefinedMetricError(std::string("OC-AUC ") + kNeedBothClasses);
  }

  const auto scores = review_scores(data, strategy);
  const auto review = select_review_set(scores, alpha);
  std::vector<std::uint8_t> reviewed(n, 0);
  for (std::size_t idx : review) reviewed[idx] = 1;

  // One corrected classifier per predictive-score threshold: reviewed
  // examples always predict their label, the rest predict I(p >= s).
  // The sentinel (s above every score) retrieves only the corrected ones.
  std::vector<double> thresholds(probs.begin(), probs.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  auto corrected_point = [&](double s, bool sentinel) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool pred = reviewed[i] ? static_cast<bool>(labels[i])
                                    : (!sentinel && probs[i] >= s);
      if (!pred) continue;
      labels[i] ? ++tp : ++fp;
    }
    return CurvePoint{static_cast<double>(fp) / static_cast<double>(negatives),
                      static_cast<double>(tp) / static_cast<double>(positives)};
  };

  std::vector<CurvePoint> points;
  points.push_back({0.0, 0.0});
  points.push_back(corrected_point(0.0, /*sentinel=*/true));
  for (double s : thresholds) {
    points.push_back(corrected_point(s, /*sentinel=*/false));
  }
  points.push_back({1.0, 1.0});

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    area += (points[i + 1].x - points[i].x) * (points[i].y + points[i + 1].y) / 2.0;
  }

  // OC-AUPRC by definition over the corrected ranking: selection-based
  // ordering of the adjusted scores with a full recount at every rank.
  const auto adjusted = oracle_adjusted_scores(data, review);
  const double auprc = brute_force_ap(adjusted, labels);
  return {area, auprc};
}

double review_efficiency(const EvalSet& data, ReviewStrategy strategy,
                         double alpha, DecisionThreshold threshold) {
  const auto scores = review_scores(data, strategy);
  const auto review = select_review_set(scores, alpha);
  if (review.empty()) {
    throw UndefinedMetricError(std::string("review efficiency: ") + kEmptyReview);
  }
  const auto errors = prediction_errors(data, threshold);
  return static_cast<double>(errors_in(review, errors)) /
         static_cast<double>(review.size());
}

double review_effectiveness(const EvalSet& data, ReviewStrategy strategy,
                            double alpha, DecisionThreshold threshold) {
  const auto errors = prediction_errors(data, threshold);
  const std::size_t total_errors = detail::parallel_count(
      data.size(), [&](std::size_t i) { return errors[i] != 0; });
  if (total_errors == 0) {
    throw UndefinedMetricError(std::string("review effectiveness: ") + kNoErrors);
  }
  const auto scores = review_scores(data, strategy);
  const auto review = select_review_set(scores, alpha);
  return static_cast<double>(errors_in(review, errors)) /
         static_cast<double>(total_errors);
}

namespace {

struct StrategyState {
  std::vector<std::size_t> order;      // full priority permutation
  std::vector<std::size_t> cum_errors; // errors among the first i of order
};

MetricCell cell_from(const std::optional<double>& v, const char* why) {
  return v ? MetricCell::of(*v) : MetricCell::undefined(why);
}

}  // namespace

SweepReport sweep(const EvalSet& data,
                  std::span<const ReviewStrategy> strategies,
                  const CapacityGrid& grid, DecisionThreshold threshold,
                  std::size_t ece_bins) {
  if (grid.size() == 0) {
    throw ValidationError("sweep needs a nonempty capacity grid");
  }
  if (strategies.empty()) {
    throw ValidationError("sweep needs at least one review strategy");
  }
  const std::size_t n = data.size();
  const auto labels = data.labels();
  const auto probs = data.probs();

  SweepReport report;
  report.n = n;
  report.prevalence = data.prevalence();

  // Capacity-independent globals.
  const auto errors = prediction_errors(data, threshold);
  const std::size_t total_errors = detail::parallel_count(
      n, [&](std::size_t i) { return errors[i] != 0; });
  const std::size_t correct_total = n - total_errors;
  const auto base = detail::rank_metrics(probs, labels);

  report.globals.acc =
      static_cast<double>(correct_total) / static_cast<double>(n);
  report.globals.auroc = cell_from(base.auroc, kNeedBothClasses);
  report.globals.auprc = cell_from(base.ap, kNeedPositive);
  report.globals.brier = brier(data);
  report.reliability = reliability(data, ece_bins);
  report.globals.ece = report.reliability.ece;
  report.globals.threshold = threshold.value();
  report.globals.ece_bins = ece_bins;
  if (total_errors == 0 || total_errors == n) {
    const char* why = total_errors == 0 ? "all predictions are correct"
                                        : "all predictions are wrong";
    report.globals.calib_auroc = MetricCell::undefined(why);
    report.globals.calib_auprc = MetricCell::undefined(why);
  } else {
    const auto calib = calibration_auc(data, threshold);
    report.globals.calib_auroc = MetricCell::of(calib.auroc);
    report.globals.calib_auprc = MetricCell::of(calib.auprc);
  }

  // One priority sort per strategy; every review set is a prefix, and the
  // prefix error counts make each cell's accuracy metrics O(1).
  std::vector<StrategyState> states(strategies.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto scores = review_scores(data, strategies[s]);
    states[s].order = priority_order(scores);
    states[s].cum_errors.resize(n + 1);
    states[s].cum_errors[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      states[s].cum_errors[i + 1] =
          states[s].cum_errors[i] + errors[states[s].order[i]];
    }
  }

  const auto alphas = grid.alphas();
  report.strategies.resize(strategies.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    report.strategies[s].strategy = strategies[s];
    report.strategies[s].results.resize(alphas.size());
  }

  // Cells are independent pure computations over shared immutable state;
  // each writes only its own slot.
  const long long cells =
      static_cast<long long>(strategies.size() * alphas.size());
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < cells; ++c) {
    try {
      const std::size_t s = static_cast<std::size_t>(c) / alphas.size();
      const std::size_t a = static_cast<std::size_t>(c) % alphas.size();
      const StrategyState& state = states[s];

      CollabResult cell;
      cell.alpha = alphas[a];
      cell.k = review_count(alphas[a], n);
      const std::size_t reviewed_errors = state.cum_errors[cell.k];
      cell.oc_acc = static_cast<double>(correct_total + reviewed_errors) /
                    static_cast<double>(n);
      cell.base_acc = report.globals.acc;
      cell.base_auroc = report.globals.auroc;
      cell.base_auprc = report.globals.auprc;
      cell.review_efficiency =
          cell.k >= 1 ? MetricCell::of(static_cast<double>(reviewed_errors) /
                                       static_cast<double>(cell.k))
                      : MetricCell::undefined(kEmptyReview);
      cell.review_effectiveness =
          total_errors >= 1
              ? MetricCell::of(static_cast<double>(reviewed_errors) /
                               static_cast<double>(total_errors))
              : MetricCell::undefined(kNoErrors);

      if (cell.k == 0) {
        // No oracle corrections: identical to the base ranking metrics.
        cell.oc_auroc = report.globals.auroc;
        cell.oc_auprc = report.globals.auprc;
      } else {
        std::vector<double> adjusted(probs.begin(), probs.end());
        for (std::size_t i = 0; i < cell.k; ++i) {
          const std::size_t idx = state.order[i];
          adjusted[idx] = static_cast<double>(labels[idx]);
        }
        const auto m = detail::rank_metrics(adjusted, labels);
        cell.oc_auroc = cell_from(m.auroc, kNeedBothClasses);
        cell.oc_auprc = cell_from(m.ap, kNeedPositive);
      }
      report.strategies[s].results[a] = std::move(cell);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace ocmetrics
