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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocmetrics/collaboration.hpp"
#include "ocmetrics/io.hpp"
#include "ocmetrics/selftest.hpp"
#include "ocmetrics/synth.hpp"
#include "ocmetrics/version.hpp"

namespace {

using namespace ocmetrics;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInternal = 2;

std::string slurp(const std::string& source) {
  if (source == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + source + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<ReviewStrategy> strategies_from(const std::string& name) {
  if (name == "toxicity") return {ReviewStrategy::kToxicity};
  if (name == "uncertainty") return {ReviewStrategy::kUncertainty};
  if (name == "both") {
    return {ReviewStrategy::kUncertainty, ReviewStrategy::kToxicity};
  }
  throw ValidationError("unknown strategy '" + name +
                        "' (expected uncertainty, toxicity or both)");
}

InputFormat format_from(const std::string& name) {
  if (name == "jsonl") return InputFormat::kJsonl;
  if (name == "csv") return InputFormat::kCsv;
  throw ValidationError("unknown format '" + name + "' (expected jsonl or csv)");
}

std::string cell_text(const MetricCell& cell) {
  if (!cell.defined()) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", *cell.value);
  return buf;
}

void print_summary(const SweepReport& report, const Provenance& provenance) {
  std::printf("dataset: n=%zu prevalence=%.6g source=%s\n", report.n,
              report.prevalence, provenance.source.c_str());
  const auto& g = report.globals;
  std::printf(
      "globals: acc=%.6g auroc=%s auprc=%s brier=%.6g ece=%.6g "
      "calib_auroc=%s calib_auprc=%s (threshold=%.6g, ece_bins=%zu)\n",
      g.acc, cell_text(g.auroc).c_str(), cell_text(g.auprc).c_str(), g.brier,
      g.ece, cell_text(g.calib_auroc).c_str(), cell_text(g.calib_auprc).c_str(),
      g.threshold, g.ece_bins);
  std::printf("%-12s %8s %10s %8s %9s %9s %11s %13s\n", "strategy", "alpha",
              "k", "oc_acc", "oc_auroc", "oc_auprc", "efficiency",
              "effectiveness");
  for (const auto& s : report.strategies) {
    for (const auto& r : s.results) {
      std::printf("%-12s %8.4g %10zu %8.4g %9s %9s %11s %13s\n",
                  to_string(s.strategy), r.alpha, r.k, r.oc_acc,
                  cell_text(r.oc_auroc).c_str(), cell_text(r.oc_auprc).c_str(),
                  cell_text(r.review_efficiency).c_str(),
                  cell_text(r.review_effectiveness).c_str());
    }
  }
}

struct EvaluateOptions {
  std::string input;
  std::string format = "jsonl";
  std::string strategy = "both";
  std::vector<double> alphas;
  double threshold = 0.5;
  std::size_t ece_bins = 15;
  std::string report_path;
  std::string table_path;
};

int run_evaluate(const EvaluateOptions& options, bool use_default_grid) {
  const std::string bytes = slurp(options.input);
  const Provenance provenance{options.input, fnv1a_digest(bytes)};
  std::istringstream stream(bytes);
  const EvalSet data = parse_input(stream, format_from(options.format));

  const auto strategies = strategies_from(options.strategy);
  const CapacityGrid grid = use_default_grid ? CapacityGrid::default_grid()
                                             : CapacityGrid(options.alphas);
  const DecisionThreshold threshold(options.threshold);

  const SweepReport report =
      sweep(data, strategies, grid, threshold, options.ece_bins);
  if (!options.report_path.empty()) {
    emit_report(report, provenance, options.report_path);
  }
  if (!options.table_path.empty()) {
    emit_sweep_csv(report, options.table_path);
  }
  print_summary(report, provenance);
  return kExitOk;
}

struct SimulateOptions {
  std::size_t n = 0;
  double prevalence = kPrevalencePresetCommon;
  double temperature = 1.0;
  double bias = 0.0;
  double concentration = kDefaultConcentration;
  std::uint64_t seed = 0;
  std::string output;
};

int run_simulate(const SimulateOptions& options) {
  const auto spec = GeneratorSpec::from_prevalence(
      options.n, options.prevalence, options.temperature, options.bias,
      options.seed, options.concentration);
  const EvalSet data = generate(spec);
  if (options.output == "-") {
    write_jsonl(data, std::cout);
  } else {
    std::ofstream out(options.output, std::ios::binary);
    if (!out) {
      throw IoError("cannot open '" + options.output + "' for writing");
    }
    write_jsonl(data, out);
    if (!out) {
      throw IoError("failed while writing '" + options.output + "'");
    }
    std::fprintf(stderr, "wrote %zu examples to %s (prevalence %.6g)\n",
                 data.size(), options.output.c_str(), data.prevalence());
  }
  return kExitOk;
}

int run_selftest_cmd(std::uint64_t seed) {
  SelftestConfig config;
  config.seed = seed;
  const SelftestReport report = run_selftest(config);
  for (const auto& suite : report.suites) {
    std::printf("[%s] %s: %zu trials, %zu failures, max error %.3g\n",
                suite.passed() ? "PASS" : "FAIL", suite.name.c_str(),
                suite.trials, suite.failures, suite.max_error);
  }
  if (!report.passed()) {
    std::printf("selftest FAILED\n");
    return kExitInternal;
  }
  std::printf("selftest passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative moderation metrics over scored predictions"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  EvaluateOptions eval_options;
  auto add_common = [&](CLI::App* cmd, bool with_alphas) {
    cmd->add_option("--input", eval_options.input,
                    "scored predictions file, or - for stdin")
        ->required();
    cmd->add_option("--format", eval_options.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("--strategy", eval_options.strategy,
                    "uncertainty, toxicity or both")
        ->check(CLI::IsMember({"uncertainty", "toxicity", "both"}));
    if (with_alphas) {
      cmd->add_option("--alphas", eval_options.alphas,
                      "review fractions, comma separated, strictly increasing")
          ->required()
          ->delimiter(',');
    }
    cmd->add_option("--threshold", eval_options.threshold,
                    "hard-classification threshold in (0,1)");
    cmd->add_option("--ece-bins", eval_options.ece_bins,
                    "reliability bin count");
    cmd->add_option("--report", eval_options.report_path,
                    "write the full JSON report here");
    cmd->add_option("--table", eval_options.table_path,
                    "write the plot-ready sweep CSV here");
  };
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "evaluate at explicit review fractions");
  add_common(evaluate, /*with_alphas=*/true);
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate over the default eight-point capacity grid");
  add_common(sweep_cmd, /*with_alphas=*/false);

  SimulateOptions sim_options;
  CLI::App* simulate =
      app.add_subcommand("simulate", "generate a synthetic scored dataset");
  simulate->add_option("--n", sim_options.n, "number of examples")->required();
  simulate->add_option("--prevalence", sim_options.prevalence,
                       "positive-label prevalence in (0,1)");
  simulate->add_option("--temperature", sim_options.temperature,
                       "distortion temperature (1 = calibrated)");
  simulate->add_option("--bias", sim_options.bias,
                       "distortion bias (0 = calibrated)");
  simulate->add_option("--concentration", sim_options.concentration,
                       "Beta concentration a+b of the true probabilities");
  simulate->add_option("--seed", sim_options.seed, "generator seed");
  simulate->add_option("--output", sim_options.output,
                       "JSONL destination, or - for stdout")
      ->required();

  std::uint64_t selftest_seed = SelftestConfig{}.seed;
  CLI::App* selftest =
      app.add_subcommand("selftest", "run randomized verification suites");
  selftest->add_option("--seed", selftest_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) return run_evaluate(eval_options, false);
    if (sweep_cmd->parsed()) return run_evaluate(eval_options, true);
    if (simulate->parsed()) return run_simulate(sim_options);
    if (selftest->parsed()) return run_selftest_cmd(selftest_seed);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const MarginalizationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitOk;
}
