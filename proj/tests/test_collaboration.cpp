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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "ocmetrics/collaboration.hpp"
#include "ocmetrics/ranking.hpp"

using namespace ocmetrics;

namespace {

EvalSet d0() {
  return EvalSet(std::vector<std::uint8_t>{1, 0, 1, 0},
                 std::vector<double>{0.9, 0.8, 0.4, 0.1});
}

EvalSet random_set(std::mt19937_64& rng, std::size_t n_max,
                   bool force_both_classes) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = 2 + rng() % (n_max - 1);
  std::vector<double> probs(n);
  std::vector<std::uint8_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = rng() % 2 ? static_cast<double>(1 + rng() % 19) / 20.0 : unit(rng);
    labels[i] = rng() % 2;
  }
  if (force_both_classes) {
    labels[0] = 1;
    labels[1] = 0;
  }
  return EvalSet(labels, probs);
}

constexpr ReviewStrategy kBoth[] = {ReviewStrategy::kUncertainty,
                                    ReviewStrategy::kToxicity};

}  // namespace

TEST_CASE("collaboration: review scores for both strategies") {
  const auto data = d0();
  const auto tox = review_scores(data, ReviewStrategy::kToxicity);
  CHECK(tox == std::vector<double>{0.9, 0.8, 0.4, 0.1});
  const auto unc = review_scores(data, ReviewStrategy::kUncertainty);
  REQUIRE(unc.size() == 4);
  CHECK(unc[0] == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(unc[1] == doctest::Approx(0.16).epsilon(1e-15));
  CHECK(unc[2] == doctest::Approx(0.24).epsilon(1e-15));
  CHECK(unc[3] == doctest::Approx(0.09).epsilon(1e-15));

  const EvalSet flat({1, 0, 1}, {0.5, 0.5, 0.5});
  const auto flat_unc = review_scores(flat, ReviewStrategy::kUncertainty);
  for (double u : flat_unc) CHECK(u == 0.25);
}

TEST_CASE("collaboration: review count realizes floor(alpha*n)") {
  CHECK(review_count(0.25, 4) == 1);
  CHECK(review_count(0.5, 4) == 2);
  CHECK(review_count(0.0, 100) == 0);
  CHECK(review_count(1.0, 100) == 100);
  CHECK(review_count(0.15, 20) == 3);  // decimal fraction, exact product
  CHECK(review_count(0.7, 10) == 7);
  CHECK(review_count(0.001, 999) == 0);
  CHECK_THROWS_AS(review_count(1.5, 10), ValidationError);
  CHECK_THROWS_AS(review_count(-0.1, 10), ValidationError);
}

TEST_CASE("collaboration: review set selection and tie handling") {
  const auto data = d0();
  const auto unc = review_scores(data, ReviewStrategy::kUncertainty);
  CHECK(select_review_set(unc, 0.25) == std::vector<std::size_t>{2});

  const std::vector<double> tied = {0.9, 0.8, 0.8, 0.1};
  CHECK(select_review_set(tied, 0.5) == std::vector<std::size_t>{0, 1});

  CHECK(select_review_set(tied, 0.0).empty());
  CHECK_THROWS_AS(select_review_set(tied, 1.2), ValidationError);
}

TEST_CASE("collaboration: review sets nest across increasing alpha") {
  std::mt19937_64 rng(53);
  const auto grid = CapacityGrid::default_grid();
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_set(rng, 300, false);
    for (const auto strategy : kBoth) {
      const auto scores = review_scores(data, strategy);
      const auto full = select_review_set(scores, 1.0);
      for (const double alpha : grid.alphas()) {
        const auto subset = select_review_set(scores, alpha);
        REQUIRE(subset.size() <= full.size());
        for (std::size_t i = 0; i < subset.size(); ++i) {
          CHECK(subset[i] == full[i]);  // prefix of the priority order
        }
      }
    }
  }
}

TEST_CASE("collaboration: review sets do not depend on the decision threshold") {
  const auto data = d0();
  for (const auto strategy : kBoth) {
    const auto scores = review_scores(data, strategy);
    const auto set_a = select_review_set(scores, 0.5);
    // Scores are a function of probs alone; thresholds play no role.
    const auto scores_again = review_scores(data, strategy);
    CHECK(scores == scores_again);
    CHECK(select_review_set(scores_again, 0.5) == set_a);
  }
}

TEST_CASE("collaboration: oc accuracy on the worked instance") {
  const auto data = d0();
  const DecisionThreshold t{0.5};
  CHECK(oc_accuracy(data, ReviewStrategy::kUncertainty, 0.25, t) == 0.75);
  CHECK(oc_accuracy(data, ReviewStrategy::kToxicity, 0.25, t) == 0.5);
  CHECK(oc_accuracy(data, ReviewStrategy::kUncertainty, 1.0, t) == 1.0);
  CHECK(oc_accuracy(data, ReviewStrategy::kToxicity, 1.0, t) == 1.0);
}

TEST_CASE("collaboration: oracle adjusted scores substitute labels") {
  const auto data = d0();
  const std::vector<std::size_t> review = {2};
  CHECK(oracle_adjusted_scores(data, review) ==
        std::vector<double>{0.9, 0.8, 1.0, 0.1});
  CHECK(oracle_adjusted_scores(data, {}) == std::vector<double>{0.9, 0.8, 0.4, 0.1});
  const std::vector<std::size_t> all = {0, 1, 2, 3};
  CHECK(oracle_adjusted_scores(data, all) == std::vector<double>{1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("collaboration: oc auc on the worked instance") {
  const auto data = d0();
  const auto unc = oc_auc(data, ReviewStrategy::kUncertainty, 0.25);
  CHECK(unc.auroc == 1.0);
  CHECK(unc.auprc == 1.0);
  const auto tox = oc_auc(data, ReviewStrategy::kToxicity, 0.25);
  CHECK(tox.auroc == 0.75);
}

TEST_CASE("collaboration: oc auc reduces to the plain metrics at alpha zero") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_set(rng, 200, true);
    for (const auto strategy : kBoth) {
      const auto oc = oc_auc(data, strategy, 0.0);
      CHECK(oc.auroc == auroc(data.probs(), data.labels()));  // bit-exact
      CHECK(oc.auprc == average_precision(data.probs(), data.labels()));
    }
  }
}

TEST_CASE("collaboration: oc auroc is one at full capacity") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto data = random_set(rng, 150, true);
    for (const auto strategy : kBoth) {
      const auto oc = oc_auc(data, strategy, 1.0);
      CHECK(oc.auroc == 1.0);
      CHECK(oc.auprc == 1.0);
    }
  }
}

TEST_CASE("collaboration: oc auc rejects single-class input") {
  const EvalSet ones({1, 1}, {0.2, 0.6});
  CHECK_THROWS_AS(oc_auc(ones, ReviewStrategy::kToxicity, 0.5),
                  UndefinedMetricError);
}

TEST_CASE("collaboration: review efficiency on the worked instance") {
  const auto data = d0();
  const DecisionThreshold t{0.5};
  CHECK(review_efficiency(data, ReviewStrategy::kUncertainty, 0.25, t) == 1.0);
  CHECK(review_efficiency(data, ReviewStrategy::kToxicity, 0.25, t) == 0.0);
  CHECK(review_efficiency(data, ReviewStrategy::kUncertainty, 0.5, t) == 1.0);
  // Exact decomposition at alpha = 0.5.
  CHECK(0.5 + 0.5 * 1.0 ==
        oc_accuracy(data, ReviewStrategy::kUncertainty, 0.5, t));
  CHECK_THROWS_AS(review_efficiency(data, ReviewStrategy::kUncertainty, 0.0, t),
                  UndefinedMetricError);
}

TEST_CASE("collaboration: review effectiveness on the worked instance") {
  const auto data = d0();
  const DecisionThreshold t{0.5};
  CHECK(review_effectiveness(data, ReviewStrategy::kUncertainty, 0.25, t) == 0.5);
  CHECK(review_effectiveness(data, ReviewStrategy::kUncertainty, 0.5, t) == 1.0);
  CHECK(review_effectiveness(data, ReviewStrategy::kToxicity, 1.0, t) == 1.0);

  const EvalSet perfect({1, 0}, {0.9, 0.1});
  CHECK_THROWS_AS(
      review_effectiveness(perfect, ReviewStrategy::kUncertainty, 0.5, t),
      UndefinedMetricError);
}

TEST_CASE("collaboration: exact decompositions hold on random instances") {
  std::mt19937_64 rng(67);
  const auto grid = CapacityGrid::default_grid();
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = random_set(rng, 400, false);
    const std::size_t n = data.size();
    const DecisionThreshold t{0.05 + 0.9 * (static_cast<double>(rng() % 1000) / 1000.0)};
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      correct += hard_prediction(data.probs()[i], t) ==
                         static_cast<bool>(data.labels()[i])
                     ? 1
                     : 0;
    }
    const double base_acc = static_cast<double>(correct) / static_cast<double>(n);
    for (const auto strategy : kBoth) {
      for (const double alpha : grid.alphas()) {
        const std::size_t k = review_count(alpha, n);
        const double oc = oc_accuracy(data, strategy, alpha, t);
        if (k == 0) {
          CHECK(oc == base_acc);
          continue;
        }
        const double re = review_efficiency(data, strategy, alpha, t);
        const double realized = static_cast<double>(k) / static_cast<double>(n);
        CHECK(std::abs(oc - (base_acc + realized * re)) <= 1e-12);
        CHECK(oc >= base_acc);
        CHECK(oc <= 1.0);
      }
    }
  }
}

TEST_CASE("collaboration: oc metrics are nondecreasing in capacity") {
  std::mt19937_64 rng(71);
  const auto grid = CapacityGrid::default_grid();
  for (int trial = 0; trial < 30; ++trial) {
    const auto data = random_set(rng, 250, true);
    const DecisionThreshold t{0.5};
    for (const auto strategy : kBoth) {
      double prev_acc = -1.0;
      double prev_auroc = -1.0;
      for (const double alpha : grid.alphas()) {
        const double acc = oc_accuracy(data, strategy, alpha, t);
        const double roc = oc_auc(data, strategy, alpha).auroc;
        CHECK(acc >= prev_acc);
        CHECK(roc >= prev_auroc - 1e-12);
        prev_acc = acc;
        prev_auroc = roc;
      }
    }
  }
}

TEST_CASE("collaboration: fast oc auc equals the per-threshold construction") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const auto data = random_set(rng, 80, true);
    const double alpha = static_cast<double>(rng() % 101) / 100.0;
    for (const auto strategy : kBoth) {
      const auto fast = oc_auc(data, strategy, alpha);
      const auto oracle = oc_auc_threshold_oracle(data, strategy, alpha);
      CHECK(std::abs(fast.auroc - oracle.auroc) <= 1e-12);
      CHECK(std::abs(fast.auprc - oracle.auprc) <= 1e-12);
    }
  }
}

TEST_CASE("collaboration: capacity grid validation") {
  CHECK_THROWS_AS(CapacityGrid({0.2, 0.1}), ValidationError);
  CHECK_THROWS_AS(CapacityGrid({0.1, 0.1}), ValidationError);
  CHECK_THROWS_AS(CapacityGrid({-0.1, 0.5}), ValidationError);
  CHECK_THROWS_AS(CapacityGrid({0.5, 1.3}), ValidationError);
  const auto grid = CapacityGrid::default_grid();
  REQUIRE(grid.size() == 8);
  CHECK(grid.alphas()[0] == 0.001);
  CHECK(grid.alphas()[7] == 0.2);
}

TEST_CASE("collaboration: sweep reproduces the worked instance") {
  const auto data = d0();
  const CapacityGrid grid({0.25, 0.5});
  const auto report = sweep(data, kBoth, grid, DecisionThreshold{0.5}, 2);

  CHECK(report.n == 4);
  CHECK(report.prevalence == 0.5);
  CHECK(report.globals.acc == 0.5);
  CHECK(report.globals.auroc.value == 0.75);
  CHECK(*report.globals.auprc.value == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(*report.globals.calib_auroc.value == 1.0);
  CHECK(*report.globals.calib_auprc.value == 1.0);
  CHECK(report.globals.brier == doctest::Approx(0.255).epsilon(1e-15));
  CHECK(report.globals.ece == doctest::Approx(0.3).epsilon(1e-15));

  REQUIRE(report.strategies.size() == 2);
  const auto& unc = report.strategies[0];
  REQUIRE(unc.strategy == ReviewStrategy::kUncertainty);
  CHECK(unc.results[0].k == 1);
  CHECK(unc.results[0].oc_acc == 0.75);
  CHECK(*unc.results[0].oc_auroc.value == 1.0);
  CHECK(*unc.results[0].oc_auprc.value == 1.0);
  CHECK(*unc.results[0].review_efficiency.value == 1.0);
  CHECK(*unc.results[0].review_effectiveness.value == 0.5);
  CHECK(unc.results[1].oc_acc == 1.0);
  CHECK(*unc.results[1].review_efficiency.value == 1.0);
  CHECK(*unc.results[1].review_effectiveness.value == 1.0);

  const auto& tox = report.strategies[1];
  REQUIRE(tox.strategy == ReviewStrategy::kToxicity);
  CHECK(tox.results[0].oc_acc == 0.5);
  CHECK(*tox.results[0].oc_auroc.value == 0.75);
  CHECK(*tox.results[0].review_efficiency.value == 0.0);
  CHECK(tox.results[1].oc_acc == 0.75);
  CHECK(*tox.results[1].review_efficiency.value == 0.5);
}

TEST_CASE("collaboration: sweep at alpha zero matches the base columns") {
  std::mt19937_64 rng(79);
  const auto data = random_set(rng, 200, true);
  const CapacityGrid grid({0.0});
  const auto report = sweep(data, kBoth, grid, DecisionThreshold{0.5});
  for (const auto& s : report.strategies) {
    REQUIRE(s.results.size() == 1);
    const auto& cell = s.results[0];
    CHECK(cell.k == 0);
    CHECK(cell.oc_acc == cell.base_acc);
    CHECK(*cell.oc_auroc.value == *cell.base_auroc.value);  // bit-exact
    CHECK(*cell.oc_auprc.value == *cell.base_auprc.value);
    CHECK_FALSE(cell.review_efficiency.defined());
    CHECK(!cell.review_efficiency.reason.empty());
  }
}

TEST_CASE("collaboration: sweep records undefined cells as explicit nulls") {
  // Single-class data: ranking metrics are undefined at every capacity.
  const EvalSet ones({1, 1, 1}, {0.9, 0.5, 0.2});
  const CapacityGrid grid({0.0, 0.5});
  const auto report = sweep(ones, kBoth, grid, DecisionThreshold{0.5});
  for (const auto& s : report.strategies) {
    for (const auto& cell : s.results) {
      CHECK_FALSE(cell.oc_auroc.defined());
      CHECK(!cell.oc_auroc.reason.empty());
      CHECK(cell.oc_auprc.defined());  // all-positive: AP exists
    }
  }
  CHECK_FALSE(report.globals.auroc.defined());
  // No errors at this threshold for the all-positive high-prob set? There are:
  // probs 0.2 predicts 0 but label is 1, so calibration AUC may be defined.
  CHECK(report.globals.acc > 0.0);
}

TEST_CASE("collaboration: sweep agrees with the per-cell operations") {
  std::mt19937_64 rng(83);
  const auto data = random_set(rng, 300, true);
  const auto grid = CapacityGrid::default_grid();
  const DecisionThreshold t{0.5};
  const auto report = sweep(data, kBoth, grid, t);
  for (const auto& s : report.strategies) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const double alpha = grid.alphas()[a];
      const auto& cell = s.results[a];
      CHECK(cell.oc_acc == oc_accuracy(data, s.strategy, alpha, t));
      const auto oc = oc_auc(data, s.strategy, alpha);
      CHECK(*cell.oc_auroc.value == oc.auroc);
      CHECK(*cell.oc_auprc.value == oc.auprc);
      if (cell.review_efficiency.defined()) {
        CHECK(*cell.review_efficiency.value ==
              review_efficiency(data, s.strategy, alpha, t));
      }
      if (cell.review_effectiveness.defined()) {
        CHECK(*cell.review_effectiveness.value ==
              review_effectiveness(data, s.strategy, alpha, t));
      }
    }
  }
}
