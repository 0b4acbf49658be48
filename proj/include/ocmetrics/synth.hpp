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

#ifndef OCMETRICS_SYNTH_HPP_
#define OCMETRICS_SYNTH_HPP_

#include <cstddef>
#include <cstdint>

#include "ocmetrics/core.hpp"

namespace ocmetrics {

/// Default total concentration a+b of the probability-generating Beta
/// distribution when only a prevalence is given.
inline constexpr double kDefaultConcentration = 4.0;

/// Class-imbalance presets mirroring heavily and mildly imbalanced
/// moderation corpora.
inline constexpr double kPrevalencePresetRare = 0.025;
inline constexpr double kPrevalencePresetCommon = 0.096;

/// Configuration of the synthetic score generator. True probabilities q are
/// drawn from Beta(a, b) -- prevalence pi = a/(a+b) -- labels from
/// Bernoulli(q), and the reported probability is distort(q, T, bias).
struct GeneratorSpec {
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  double temperature = 1.0;
  double bias = 0.0;
  std::uint64_t seed = 0;

  double prevalence() const { return a / (a + b); }

  static GeneratorSpec from_prevalence(
      std::size_t n, double prevalence, double temperature = 1.0,
      double bias = 0.0, std::uint64_t seed = 0,
      double concentration = kDefaultConcentration);
};

/// Miscalibration distortion: logistic(logit(q)/T + bias), with q pre-clamped
/// and the result clamped to [1e-9, 1-1e-9]. T=1, bias=0 is the identity;
/// T < 1 sharpens probabilities toward the extremes (overconfidence); a
/// positive bias shifts them toward the positive class. Strictly increasing
/// in q for every T > 0, so rankings are preserved.
double distort(double q, double temperature, double bias);

/// Draws a synthetic scored dataset. With T=1, bias=0 the reported
/// probabilities equal the label-generating ones, so the dataset is
/// calibrated by construction. The draw sequence is a single deterministic
/// stream from the seed (identical output for identical specs, independent
/// of platform); generation is intentionally single-threaded.
EvalSet generate(const GeneratorSpec& spec);

}  // namespace ocmetrics

#endif  // OCMETRICS_SYNTH_HPP_
