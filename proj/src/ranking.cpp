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

#include "ocmetrics/ranking.hpp"

#include <algorithm>
#include <limits>

#include "ocmetrics/errors.hpp"

namespace ocmetrics {

namespace {

void check_lengths(std::span<const double> scores,
                   std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("score and label arrays differ in length");
  }
}

std::size_t count_positives(std::span<const std::uint8_t> labels) {
  std::size_t p = 0;
  for (std::uint8_t y : labels) p += y;
  return p;
}

// (score, original index) pairs sorted by descending score, ascending index.
std::vector<std::pair<double, std::uint32_t>> ranked_order(
    std::span<const double> scores) {
  std::vector<std::pair<double, std::uint32_t>> order(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    order[i] = {scores[i], static_cast<std::uint32_t>(i)};
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  return order;
}

}  // namespace

namespace detail {

BinaryRankMetrics rank_metrics(std::span<const double> scores,
                               std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const std::size_t n = scores.size();
  BinaryRankMetrics out;
  out.positives = count_positives(labels);
  out.negatives = n - out.positives;
  if (n == 0) return out;

  const auto order = ranked_order(scores);

  // AP: walk the deterministic ranking, precision at each positive's rank.
  if (out.positives > 0) {
    double ap_sum = 0.0;
    std::size_t seen_pos = 0;
    for (std::size_t rank = 1; rank <= n; ++rank) {
      if (labels[order[rank - 1].second]) {
        ++seen_pos;
        ap_sum += static_cast<double>(seen_pos) / static_cast<double>(rank);
      }
    }
    out.ap = ap_sum / static_cast<double>(out.positives);
  }

  // AUROC: midrank credit for tied groups. Positions i..j-1 of the
  // descending order hold ascending ranks n-j+1..n-i, midrank (2n-i-j+1)/2.
  if (out.positives > 0 && out.negatives > 0) {
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i + 1;
      while (j < n && order[j].first == order[i].first) ++j;
      std::size_t group_pos = 0;
      for (std::size_t t = i; t < j; ++t) group_pos += labels[order[t].second];
      const double midrank =
          (static_cast<double>(2 * n - i - j) + 1.0) / 2.0;
      pos_rank_sum += static_cast<double>(group_pos) * midrank;
      i = j;
    }
    const double p = static_cast<double>(out.positives);
    const double u = pos_rank_sum - p * (p + 1.0) / 2.0;
    out.auroc = u / (p * static_cast<double>(out.negatives));
  }
  return out;
}

}  // namespace detail

double auroc(std::span<const double> scores,
             std::span<const std::uint8_t> labels) {
  const auto m = detail::rank_metrics(scores, labels);
  if (!m.auroc) {
    throw UndefinedMetricError(
        "AUROC requires at least one positive and one negative label");
  }
  return *m.auroc;
}

double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels) {
  const auto m = detail::rank_metrics(scores, labels);
  if (!m.ap) {
    throw UndefinedMetricError(
        "average precision requires at least one positive label");
  }
  return *m.ap;
}

double brute_force_auroc(std::span<const double> scores,
                         std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  double credit = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        credit += 1.0;
      } else if (scores[i] == scores[j]) {
        credit += 0.5;
      }
    }
  }
  if (pairs == 0) {
    throw UndefinedMetricError(
        "AUROC requires at least one positive and one negative label");
  }
  return credit / static_cast<double>(pairs);
}

double brute_force_ap(std::span<const double> scores,
                      std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const std::size_t n = scores.size();
  const std::size_t positives = count_positives(labels);
  if (positives == 0) {
    throw UndefinedMetricError(
        "average precision requires at least one positive label");
  }

  // Build the ranking by repeated selection (descending score, ascending
  // index) and recount precision from scratch at every positive's rank.
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> ranking;
  ranking.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (best == n || scores[i] > scores[best]) best = i;
    }
    taken[best] = true;
    ranking.push_back(best);
  }

  double ap_sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (!labels[ranking[r]]) continue;
    std::size_t hits = 0;
    for (std::size_t t = 0; t <= r; ++t) hits += labels[ranking[t]];
    ap_sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return ap_sum / static_cast<double>(positives);
}

RankedCurve roc_curve(std::span<const double> scores,
                      std::span<const std::uint8_t> labels) {
  const auto m = detail::rank_metrics(scores, labels);
  if (!m.auroc) {
    throw UndefinedMetricError(
        "ROC curve requires at least one positive and one negative label");
  }
  const auto order = ranked_order(scores);
  const double P = static_cast<double>(m.positives);
  const double N = static_cast<double>(m.negatives);

  RankedCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t].second]) ++tp; else ++fp;
    }
    curve.points.push_back({static_cast<double>(fp) / N,
                            static_cast<double>(tp) / P});
    i = j;
  }
  curve.area = *m.auroc;
  return curve;
}

RankedCurve pr_curve(std::span<const double> scores,
                     std::span<const std::uint8_t> labels) {
  const auto m = detail::rank_metrics(scores, labels);
  if (!m.ap) {
    throw UndefinedMetricError(
        "PR curve requires at least one positive label");
  }
  const auto order = ranked_order(scores);
  const double P = static_cast<double>(m.positives);

  RankedCurve curve;
  curve.points.push_back({0.0, 1.0});
  std::size_t tp = 0, seen = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    for (std::size_t t = i; t < j; ++t) {
      ++seen;
      tp += labels[order[t].second];
    }
    curve.points.push_back({static_cast<double>(tp) / P,
                            static_cast<double>(tp) / static_cast<double>(seen)});
    i = j;
  }
  curve.area = *m.ap;
  return curve;
}

}  // namespace ocmetrics
