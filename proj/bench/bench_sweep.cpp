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

// Benchmark comparing the parallel sweep against a single-thread run (the
// two must produce identical bytes) and the fast metric paths against the
// brute-force reference implementations.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ocmetrics/collaboration.hpp"
#include "ocmetrics/io.hpp"
#include "ocmetrics/ranking.hpp"
#include "ocmetrics/synth.hpp"

using namespace ocmetrics;

namespace {

double time_of(const auto& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 1000000;
  if (argc > 1) n = static_cast<std::size_t>(std::atoll(argv[1]));

  std::printf("generating %zu synthetic examples...\n", n);
  const auto data =
      generate(GeneratorSpec::from_prevalence(n, 0.096, 0.5, 2.0, 7));
  const ReviewStrategy both[] = {ReviewStrategy::kUncertainty,
                                 ReviewStrategy::kToxicity};
  const auto grid = CapacityGrid::default_grid();
  const DecisionThreshold t{0.5};

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif

  SweepReport serial_report, parallel_report;
#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  const double serial_s =
      time_of([&] { serial_report = sweep(data, both, grid, t); });
#ifdef _OPENMP
  omp_set_num_threads(max_threads);
#endif
  const double parallel_s =
      time_of([&] { parallel_report = sweep(data, both, grid, t); });

  const bool identical =
      sweep_csv(serial_report) == sweep_csv(parallel_report) &&
      serial_report.globals.brier == parallel_report.globals.brier &&
      serial_report.globals.ece == parallel_report.globals.ece;
  std::printf("full sweep (2 strategies x %zu capacities):\n", grid.size());
  std::printf("  1 thread : %8.3f s\n", serial_s);
  std::printf("  %d threads: %8.3f s  (speedup %.2fx)\n", max_threads,
              parallel_s, serial_s / parallel_s);
  std::printf("  results identical across thread counts: %s\n",
              identical ? "yes" : "NO");

  // Fast paths vs brute-force references at oracle-friendly sizes.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = 2000;
  std::vector<double> scores(m);
  std::vector<std::uint8_t> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    scores[i] = unit(rng);
    labels[i] = rng() % 8 == 0 ? 1 : 0;
  }
  labels[0] = 1;
  labels[1] = 0;

  double fast_auroc = 0.0, slow_auroc = 0.0, fast_ap = 0.0, slow_ap = 0.0;
  const double fast_auroc_s = time_of([&] { fast_auroc = auroc(scores, labels); });
  const double slow_auroc_s =
      time_of([&] { slow_auroc = brute_force_auroc(scores, labels); });
  const double fast_ap_s =
      time_of([&] { fast_ap = average_precision(scores, labels); });
  const double slow_ap_s = time_of([&] { slow_ap = brute_force_ap(scores, labels); });
  std::printf("fast vs reference on n=%zu:\n", m);
  std::printf("  auroc: %8.5f ms vs %8.3f ms (|diff| = %.2e)\n",
              fast_auroc_s * 1e3, slow_auroc_s * 1e3,
              std::abs(fast_auroc - slow_auroc));
  std::printf("  ap   : %8.5f ms vs %8.3f ms (|diff| = %.2e)\n", fast_ap_s * 1e3,
              slow_ap_s * 1e3, std::abs(fast_ap - slow_ap));

  return identical ? 0 : 1;
}
