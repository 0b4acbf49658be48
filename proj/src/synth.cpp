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

#include "ocmetrics/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ocmetrics {

namespace {

// Deterministic sampling stream. mt19937_64 output is pinned by the
// standard, and every real-valued draw below is built from fixed mappings of
// those 64-bit words, so identical specs produce identical datasets on every
// platform. std:: distribution adaptors are deliberately not used (their
// algorithms are implementation-defined).
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Marsaglia-Tsang squeeze for shape >= 1, boosted for shape < 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double boost = std::pow(uniform(), 1.0 / shape);
      return gamma(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    const double s = x + y;
    if (!(s > 0.0) || !std::isfinite(s)) {
      return a / (a + b);  // both gammas underflowed
    }
    return x / s;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

GeneratorSpec GeneratorSpec::from_prevalence(std::size_t n, double prevalence,
                                             double temperature, double bias,
                                             std::uint64_t seed,
                                             double concentration) {
  if (!(prevalence > 0.0 && prevalence < 1.0)) {
    throw ValidationError("prevalence must lie in (0,1), got " +
                          std::to_string(prevalence));
  }
  if (!(concentration > 0.0)) {
    throw ValidationError("concentration must be positive");
  }
  GeneratorSpec spec;
  spec.n = n;
  spec.a = prevalence * concentration;
  spec.b = (1.0 - prevalence) * concentration;
  spec.temperature = temperature;
  spec.bias = bias;
  spec.seed = seed;
  return spec;
}

double distort(double q, double temperature, double bias) {
  if (!(temperature > 0.0)) {
    throw ValidationError("temperature must be positive, got " +
                          std::to_string(temperature));
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("probability outside [0,1]");
  }
  constexpr double kEps = 1e-9;
  const double qc = std::clamp(q, kEps, 1.0 - kEps);
  const double z = std::log(qc / (1.0 - qc)) / temperature + bias;
  const double p = 1.0 / (1.0 + std::exp(-z));
  return std::clamp(p, kEps, 1.0 - kEps);
}

EvalSet generate(const GeneratorSpec& spec) {
  if (spec.n < 1) {
    throw ValidationError("generator needs n >= 1");
  }
  if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
    throw ValidationError("shape parameters must be positive");
  }
  if (!(spec.temperature > 0.0)) {
    throw ValidationError("temperature must be positive");
  }

  // Single-threaded on purpose: one seed, one stream, one dataset. Per
  // example the stream is consumed as: true probability q (variable number
  // of words, rejection sampling), then one word for the label.
  SampleStream stream(spec.seed);
  std::vector<std::uint8_t> labels(spec.n);
  std::vector<double> probs(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double q = stream.beta(spec.a, spec.b);
    labels[i] = stream.uniform() < q ? 1 : 0;
    probs[i] = distort(q, spec.temperature, spec.bias);
  }
  return EvalSet(std::move(labels), std::move(probs));
}

}  // namespace ocmetrics
