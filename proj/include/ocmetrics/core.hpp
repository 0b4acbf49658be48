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

#ifndef OCMETRICS_CORE_HPP_
#define OCMETRICS_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocmetrics/errors.hpp"

namespace ocmetrics {

/// One scored prediction as ingested: a binary ground-truth label plus the
/// model's predictive probability p(y=1|x), or a list of posterior predictive
/// samples from which that probability is marginalized.
struct ScoredExample {
  std::string id;               // empty means absent
  int label = 0;                // must be 0 or 1
  std::optional<double> prob;   // in [0,1] when present
  std::vector<double> samples;  // each in [0,1]; empty means absent
};

/// Hard-classification threshold: predict 1 iff prob >= value. The value must
/// lie strictly inside (0,1).
class DecisionThreshold {
 public:
  explicit DecisionThreshold(double t = 0.5) : t_(t) {
    if (!(t > 0.0 && t < 1.0)) {
      throw ValidationError("decision threshold must lie in (0,1), got " +
                            std::to_string(t));
    }
  }

  double value() const { return t_; }

 private:
  double t_;
};

inline bool hard_prediction(double prob, DecisionThreshold t) {
  return prob >= t.value();
}

/// Immutable, validated collection of scored examples. Input order is
/// preserved and is the canonical index order used for deterministic
/// tie-breaking everywhere downstream. Safe to share across threads.
class EvalSet {
 public:
  /// Validates and ingests raw records; probabilities are marginalized from
  /// posterior samples where absent. Throws ValidationError carrying the
  /// offending record index (0-based).
  explicit EvalSet(std::span<const ScoredExample> records);

  /// Builds directly from pre-separated arrays (labels 0/1, probs in [0,1]).
  EvalSet(std::vector<std::uint8_t> labels, std::vector<double> probs,
          std::vector<std::string> ids = {});

  std::size_t size() const { return probs_.size(); }
  std::size_t positives() const { return positives_; }
  double prevalence() const {
    return static_cast<double>(positives_) / static_cast<double>(size());
  }

  std::span<const std::uint8_t> labels() const { return labels_; }
  std::span<const double> probs() const { return probs_; }

  bool has_ids() const { return !ids_.empty(); }
  /// Empty string when the example carries no id.
  const std::string& id(std::size_t i) const;

 private:
  void validate_arrays() const;

  std::vector<std::uint8_t> labels_;
  std::vector<double> probs_;
  std::vector<std::string> ids_;  // empty, or one entry per example
  std::size_t positives_ = 0;
};

/// Collapses posterior predictive samples into a single predictive
/// probability (unweighted mean). The sum is taken over an ascending-sorted
/// copy, so the result is exactly permutation-invariant, and it is clamped to
/// [min(samples), max(samples)].
double marginalize(std::span<const double> samples);

/// Validated construction of an EvalSet from raw records.
inline EvalSet build_eval_set(std::span<const ScoredExample> records) {
  return EvalSet(records);
}

}  // namespace ocmetrics

#endif  // OCMETRICS_CORE_HPP_
