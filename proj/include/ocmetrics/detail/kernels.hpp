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

#ifndef OCMETRICS_DETAIL_KERNELS_HPP_
#define OCMETRICS_DETAIL_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ocmetrics::detail {

// Fixed block size for deterministic parallel reductions. Partial sums are
// produced per block (parallel) and combined in block order (serial), so the
// result does not depend on the number of threads.
inline constexpr std::size_t kReductionBlock = 4096;

template <typename Term>
double blocked_sum(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <typename Pred>
std::size_t parallel_count(std::size_t n, Pred&& pred) {
  long long count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    if (pred(static_cast<std::size_t>(i))) ++count;
  }
  return static_cast<std::size_t>(count);
}

template <typename Fn>
void parallel_transform(std::size_t n, Fn&& fn) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    fn(static_cast<std::size_t>(i));
  }
}

}  // namespace ocmetrics::detail

#endif  // OCMETRICS_DETAIL_KERNELS_HPP_
