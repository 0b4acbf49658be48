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

#include "ocmetrics/calibration.hpp"

#include <cmath>
#include <vector>

#include "ocmetrics/detail/kernels.hpp"
#include "ocmetrics/ranking.hpp"

namespace ocmetrics {

double uncertainty_score(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("probability outside [0,1]");
  }
  return p * (1.0 - p);
}

double brier(const EvalSet& data) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  const double sum = detail::blocked_sum(data.size(), [&](std::size_t i) {
    const double d = probs[i] - static_cast<double>(labels[i]);
    return d * d;
  });
  return sum / static_cast<double>(data.size());
}

ReliabilityBins reliability(const EvalSet& data, std::size_t bin_count) {
  if (bin_count == 0) {
    throw ValidationError("reliability needs at least one bin");
  }
  const auto probs = data.probs();
  const auto labels = data.labels();
  const std::size_t n = data.size();
  const std::size_t nblocks =
      (n + detail::kReductionBlock - 1) / detail::kReductionBlock;

  // Per-block bin accumulators merged in block order: the binning is
  // deterministic for any thread count.
  struct BinAcc {
    double sum_p = 0.0;
    double sum_y = 0.0;
    std::size_t count = 0;
  };
  std::vector<std::vector<BinAcc>> block_bins(nblocks,
                                              std::vector<BinAcc>(bin_count));
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    auto& local = block_bins[static_cast<std::size_t>(b)];
    const std::size_t lo = static_cast<std::size_t>(b) * detail::kReductionBlock;
    const std::size_t hi =
        lo + detail::kReductionBlock < n ? lo + detail::kReductionBlock : n;
    for (std::size_t i = lo; i < hi; ++i) {
      auto idx = static_cast<std::size_t>(probs[i] * static_cast<double>(bin_count));
      if (idx >= bin_count) idx = bin_count - 1;  // prob exactly 1
      local[idx].sum_p += probs[i];
      local[idx].sum_y += static_cast<double>(labels[i]);
      local[idx].count += 1;
    }
  }
  std::vector<BinAcc> merged(bin_count);
  for (const auto& local : block_bins) {
    for (std::size_t b = 0; b < bin_count; ++b) {
      merged[b].sum_p += local[b].sum_p;
      merged[b].sum_y += local[b].sum_y;
      merged[b].count += local[b].count;
    }
  }

  ReliabilityBins out;
  out.bin_count = bin_count;
  out.bins.resize(bin_count);
  const double width = 1.0 / static_cast<double>(bin_count);
  double ece = 0.0;
  for (std::size_t b = 0; b < bin_count; ++b) {
    auto& bin = out.bins[b];
    bin.lo = static_cast<double>(b) * width;
    bin.hi = b + 1 == bin_count ? 1.0 : static_cast<double>(b + 1) * width;
    bin.count = merged[b].count;
    bin.empty = merged[b].count == 0;
    if (!bin.empty) {
      bin.conf = merged[b].sum_p / static_cast<double>(bin.count);
      bin.acc = merged[b].sum_y / static_cast<double>(bin.count);
      ece += (static_cast<double>(bin.count) / static_cast<double>(n)) *
             std::abs(bin.conf - bin.acc);
    }
  }
  out.ece = ece;
  return out;
}

CalibrationConfusion calibration_confusion(const EvalSet& data,
                                           std::span<const std::size_t> review_set,
                                           DecisionThreshold threshold) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  const std::size_t n = data.size();

  std::vector<std::uint8_t> reviewed(n, 0);
  for (std::size_t idx : review_set) {
    if (idx >= n) {
      throw ValidationError("review index out of range", idx);
    }
    reviewed[idx] = 1;
  }

  CalibrationConfusion c;
  for (std::size_t i = 0; i < n; ++i) {
    const bool wrong = hard_prediction(probs[i], threshold) !=
                       static_cast<bool>(labels[i]);
    if (reviewed[i]) {
      wrong ? ++c.tp : ++c.fp;
    } else {
      wrong ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

CalibrationAuc calibration_auc(const EvalSet& data, DecisionThreshold threshold) {
  const auto probs = data.probs();
  const auto labels = data.labels();
  const std::size_t n = data.size();

  std::vector<double> scores(n);
  std::vector<std::uint8_t> error_labels(n);
  detail::parallel_transform(n, [&](std::size_t i) {
    scores[i] = probs[i] * (1.0 - probs[i]);
    error_labels[i] = hard_prediction(probs[i], threshold) !=
                              static_cast<bool>(labels[i])
                          ? 1
                          : 0;
  });

  const auto m = detail::rank_metrics(scores, error_labels);
  if (!m.auroc || !m.ap) {
    throw UndefinedMetricError(
        "calibration AUC requires at least one model error and one correct "
        "prediction");
  }
  return {*m.auroc, *m.ap};
}

}  // namespace ocmetrics
