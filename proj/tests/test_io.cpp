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
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "ocmetrics/io.hpp"
#include "ocmetrics/synth.hpp"

using namespace ocmetrics;

namespace {

constexpr const char* kD0Jsonl =
    "{\"label\": 1, \"prob\": 0.9}\n"
    "{\"label\": 0, \"prob\": 0.8}\n"
    "{\"label\": 1, \"prob\": 0.4}\n"
    "{\"label\": 0, \"prob\": 0.1}\n";

EvalSet parse_jsonl_string(const std::string& text) {
  std::istringstream in(text);
  return parse_input(in, InputFormat::kJsonl);
}

EvalSet parse_csv_string(const std::string& text) {
  std::istringstream in(text);
  return parse_input(in, InputFormat::kCsv);
}

SweepReport d0_report() {
  const EvalSet data = parse_jsonl_string(kD0Jsonl);
  const ReviewStrategy both[] = {ReviewStrategy::kUncertainty,
                                 ReviewStrategy::kToxicity};
  return sweep(data, both, CapacityGrid({0.25, 0.5}), DecisionThreshold{0.5});
}

}  // namespace

TEST_CASE("io: jsonl parsing of the worked instance") {
  const EvalSet data = parse_jsonl_string(kD0Jsonl);
  CHECK(data.size() == 4);
  CHECK(data.prevalence() == 0.5);
  CHECK(data.probs()[0] == 0.9);
}

TEST_CASE("io: jsonl records may carry samples instead of prob") {
  const EvalSet data =
      parse_jsonl_string("{\"label\": 1, \"samples\": [0.2, 0.8]}\n");
  CHECK(data.probs()[0] == 0.5);
}

TEST_CASE("io: jsonl ids survive parsing") {
  const EvalSet data = parse_jsonl_string(
      "{\"id\": \"c-1\", \"label\": 0, \"prob\": 0.3}\n");
  REQUIRE(data.has_ids());
  CHECK(data.id(0) == "c-1");
}

TEST_CASE("io: jsonl failures carry line numbers") {
  SUBCASE("malformed json") {
    try {
      parse_jsonl_string("{\"label\": 1, \"prob\": 0.9}\nnot json\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("range violation") {
    try {
      parse_jsonl_string(
          "{\"label\": 1, \"prob\": 0.9}\n{\"label\": 1, \"prob\": 1.2}\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      REQUIRE(e.index().has_value());
      CHECK(*e.index() == 2);
    }
  }
  SUBCASE("bad label") {
    CHECK_THROWS_AS(parse_jsonl_string("{\"label\": 3, \"prob\": 0.9}\n"),
                    ValidationError);
  }
  SUBCASE("missing prob and samples") {
    CHECK_THROWS_AS(parse_jsonl_string("{\"label\": 1}\n"), ValidationError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_jsonl_string(""), ValidationError);
  }
}

TEST_CASE("io: csv parsing with reordered and extra columns") {
  const EvalSet data = parse_csv_string(
      "id,extra,prob,label\n"
      "a,9,0.9,1\n"
      "b,9,0.8,0\n");
  CHECK(data.size() == 2);
  CHECK(data.probs()[0] == 0.9);
  CHECK(data.labels()[1] == 0);
  CHECK(data.id(0) == "a");
}

TEST_CASE("io: csv header must name label and prob") {
  try {
    parse_csv_string("label,score\n1,0.5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("io: csv row failures carry line numbers") {
  SUBCASE("unparsable prob") {
    try {
      parse_csv_string("label,prob\n1,0.9\n0,zero\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("field count mismatch") {
    CHECK_THROWS_AS(parse_csv_string("label,prob\n1\n"), ParseError);
  }
  SUBCASE("label out of range") {
    CHECK_THROWS_AS(parse_csv_string("label,prob\n2,0.9\n"), ValidationError);
  }
}

TEST_CASE("io: jsonl round-trip preserves labels and probs bit-exactly") {
  const auto data = generate(GeneratorSpec::from_prevalence(500, 0.2, 0.7, 0.4, 8));
  std::ostringstream out;
  write_jsonl(data, out);
  const EvalSet back = parse_jsonl_string(out.str());
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.labels()[i] == data.labels()[i]);
    CHECK(back.probs()[i] == data.probs()[i]);  // bit-exact
  }
}

TEST_CASE("io: sweep csv matches the worked instance") {
  const auto report = d0_report();
  const std::string csv = sweep_csv(report);
  CHECK(csv ==
        "strategy,alpha,k,oc_acc,oc_auroc,oc_auprc,review_efficiency,"
        "review_effectiveness\n"
        "uncertainty,0.25,1,0.75,1,1,1,0.5\n"
        "uncertainty,0.5,2,1,1,1,1,1\n"
        "toxicity,0.25,1,0.5,0.75,0.83333333333333326,0,0\n"
        "toxicity,0.5,2,0.75,1,1,0.5,0.5\n");
  // Identical report, identical bytes.
  CHECK(sweep_csv(report) == csv);
}

TEST_CASE("io: report json round-trips and flags undefined cells") {
  const auto report = d0_report();
  const Provenance provenance{"d0.jsonl", fnv1a_digest(kD0Jsonl)};
  const std::string text = report_json(report, provenance);
  const auto doc = nlohmann::json::parse(text);

  CHECK(doc["dataset"]["n"] == 4);
  CHECK(doc["dataset"]["prevalence"] == 0.5);
  CHECK(doc["dataset"]["digest"] == provenance.digest);
  CHECK(doc["globals"]["acc"] == 0.5);
  CHECK(doc["globals"]["auroc"] == 0.75);
  CHECK(doc["globals"]["brier"].get<double>() ==
        doctest::Approx(0.255).epsilon(1e-15));
  CHECK(doc["globals"]["threshold"] == 0.5);
  CHECK(doc["reliability"]["bins"].size() == 15);

  const auto& unc = doc["strategies"][0];
  CHECK(unc["strategy"] == "uncertainty");
  CHECK(unc["results"][0]["alpha"] == 0.25);
  CHECK(unc["results"][0]["k"] == 1);
  CHECK(unc["results"][0]["oc_acc"] == 0.75);
  CHECK(unc["results"][0]["oc_auroc"] == 1.0);

  // An alpha=0 cell serializes review efficiency as null with a reason.
  const ReviewStrategy one[] = {ReviewStrategy::kUncertainty};
  const EvalSet data = parse_jsonl_string(kD0Jsonl);
  const auto zero_report =
      sweep(data, one, CapacityGrid({0.0}), DecisionThreshold{0.5});
  const auto zero_doc =
      nlohmann::json::parse(report_json(zero_report, provenance));
  const auto& cell = zero_doc["strategies"][0]["results"][0];
  CHECK(cell["review_efficiency"].is_null());
  CHECK(cell["reasons"].contains("review_efficiency"));
}

TEST_CASE("io: report json doubles round-trip bit-exactly") {
  const auto data = generate(GeneratorSpec::from_prevalence(300, 0.3, 0.6, 0.2, 12));
  const ReviewStrategy both[] = {ReviewStrategy::kUncertainty,
                                 ReviewStrategy::kToxicity};
  const auto report =
      sweep(data, both, CapacityGrid::default_grid(), DecisionThreshold{0.5});
  const auto doc =
      nlohmann::json::parse(report_json(report, {"synthetic", "fnv1a64:0"}));
  for (std::size_t s = 0; s < report.strategies.size(); ++s) {
    for (std::size_t a = 0; a < report.strategies[s].results.size(); ++a) {
      const auto& cell = report.strategies[s].results[a];
      const auto& row = doc["strategies"][s]["results"][a];
      CHECK(row["oc_acc"].get<double>() == cell.oc_acc);
      if (cell.oc_auroc.defined()) {
        CHECK(row["oc_auroc"].get<double>() == *cell.oc_auroc.value);
      }
    }
  }
}

TEST_CASE("io: fnv1a digest is stable and labeled") {
  CHECK(fnv1a_digest("abc") == "fnv1a64:e71fa2190541574b");
  CHECK(fnv1a_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(fnv1a_digest("abc") == fnv1a_digest("abc"));
  CHECK(fnv1a_digest("abc") != fnv1a_digest("abd"));
}
