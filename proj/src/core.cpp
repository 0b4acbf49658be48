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

#include "ocmetrics/core.hpp"

#include <algorithm>
#include <utility>

namespace ocmetrics {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

const std::string kEmptyId;

}  // namespace

double marginalize(std::span<const double> samples) {
  if (samples.empty()) {
    throw MarginalizationError("cannot marginalize an empty sample list");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double s : sorted) sum += s;
  const double mean = sum / static_cast<double>(sorted.size());
  return std::clamp(mean, sorted.front(), sorted.back());
}

EvalSet::EvalSet(std::span<const ScoredExample> records) {
  if (records.empty()) {
    throw ValidationError("cannot build an evaluation set from zero records");
  }
  labels_.reserve(records.size());
  probs_.reserve(records.size());
  const bool any_id = std::any_of(records.begin(), records.end(),
                                  [](const ScoredExample& r) { return !r.id.empty(); });
  if (any_id) ids_.reserve(records.size());

  for (std::size_t i = 0; i < records.size(); ++i) {
    const ScoredExample& r = records[i];
    if (r.label != 0 && r.label != 1) {
      throw ValidationError("label must be 0 or 1", i);
    }
    for (double s : r.samples) {
      if (!in_unit_interval(s)) {
        throw ValidationError("posterior sample outside [0,1]", i);
      }
    }
    double prob;
    if (r.prob.has_value()) {
      prob = *r.prob;
      if (!in_unit_interval(prob)) {
        throw ValidationError("prob outside [0,1]", i);
      }
    } else if (!r.samples.empty()) {
      prob = marginalize(r.samples);
    } else {
      throw ValidationError("record has neither prob nor samples", i);
    }
    labels_.push_back(static_cast<std::uint8_t>(r.label));
    probs_.push_back(prob);
    if (any_id) ids_.push_back(r.id);
    positives_ += static_cast<std::size_t>(r.label);
  }
}

EvalSet::EvalSet(std::vector<std::uint8_t> labels, std::vector<double> probs,
                 std::vector<std::string> ids)
    : labels_(std::move(labels)), probs_(std::move(probs)), ids_(std::move(ids)) {
  validate_arrays();
  for (std::uint8_t y : labels_) positives_ += y;
}

void EvalSet::validate_arrays() const {
  if (probs_.empty()) {
    throw ValidationError("cannot build an evaluation set from zero records");
  }
  if (labels_.size() != probs_.size()) {
    throw ValidationError("label and prob arrays differ in length");
  }
  if (!ids_.empty() && ids_.size() != probs_.size()) {
    throw ValidationError("id array length does not match example count");
  }
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (labels_[i] > 1) throw ValidationError("label must be 0 or 1", i);
    if (!in_unit_interval(probs_[i])) {
      throw ValidationError("prob outside [0,1]", i);
    }
  }
}

const std::string& EvalSet::id(std::size_t i) const {
  if (ids_.empty()) return kEmptyId;
  return ids_[i];
}

}  // namespace ocmetrics
