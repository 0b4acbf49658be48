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

#ifndef OCMETRICS_CALIBRATION_HPP_
#define OCMETRICS_CALIBRATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ocmetrics/core.hpp"

namespace ocmetrics {

/// Predictive variance of the binary distribution: p*(1-p). Maximal (0.25)
/// at p = 0.5, zero at the endpoints.
double uncertainty_score(double p);

/// Mean squared error between predictive probabilities and labels.
double brier(const EvalSet& data);

struct ReliabilityBin {
  std::size_t count = 0;
  double conf = 0.0;  // mean predicted probability in the bin
  double acc = 0.0;   // empirical positive-label rate in the bin
  double lo = 0.0;    // bin interval [lo, hi); the last bin is right-closed
  double hi = 0.0;
  bool empty = true;
};

/// Equal-width reliability bins over [0,1] with the final bin right-closed
/// (a probability of exactly 1 lands in the last bin). Empty bins contribute
/// zero to the ECE and are flagged.
struct ReliabilityBins {
  std::size_t bin_count = 0;
  std::vector<ReliabilityBin> bins;
  double ece = 0.0;  // sum over nonempty bins of (n_b/N)*|conf(b)-acc(b)|
};

ReliabilityBins reliability(const EvalSet& data, std::size_t bin_count);

/// Confusion counts for the error-prediction reading of calibration at a
/// given review set: positive = "model prediction inaccurate",
/// predicted-positive = "example selected for review".
struct CalibrationConfusion {
  std::size_t tp = 0;  // reviewed and inaccurate
  std::size_t fp = 0;  // reviewed but accurate
  std::size_t fn = 0;  // inaccurate but not reviewed (over-confidence)
  std::size_t tn = 0;  // accurate and not reviewed
};

CalibrationConfusion calibration_confusion(const EvalSet& data,
                                           std::span<const std::size_t> review_set,
                                           DecisionThreshold threshold);

struct CalibrationAuc {
  double auroc = 0.0;
  double auprc = 0.0;
};

/// Ranking quality of the uncertainty score at predicting the model's own
/// errors: AUROC/AUPRC of the binary task with label I(f(x) != y) and score
/// p*(1-p). Throws UndefinedMetricError when the predictions are all correct
/// or all wrong.
CalibrationAuc calibration_auc(const EvalSet& data, DecisionThreshold threshold);

}  // namespace ocmetrics

#endif  // OCMETRICS_CALIBRATION_HPP_
