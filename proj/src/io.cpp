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

#include "ocmetrics/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ocmetrics/version.hpp"

namespace ocmetrics {

namespace {

using nlohmann::json;

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

double parse_double(std::string_view field, const char* what, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string("cannot parse ") + what + " value '" +
                         std::string(field) + "'",
                     line_no);
  }
  return value;
}

struct Accumulator {
  std::vector<std::uint8_t> labels;
  std::vector<double> probs;
  std::vector<std::string> ids;
  bool any_id = false;

  void add(int label, double prob, std::string id, std::size_t line_no) {
    if (label != 0 && label != 1) {
      throw ValidationError("label must be 0 or 1", line_no);
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw ValidationError("prob outside [0,1]", line_no);
    }
    labels.push_back(static_cast<std::uint8_t>(label));
    probs.push_back(prob);
    ids.push_back(std::move(id));
    if (!ids.back().empty()) any_id = true;
  }

  EvalSet finish() {
    if (probs.empty()) {
      throw ValidationError("input contains no records");
    }
    if (!any_id) ids.clear();
    return EvalSet(std::move(labels), std::move(probs), std::move(ids));
  }
};

EvalSet parse_jsonl(std::istream& in) {
  Accumulator acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error&) {
      throw ParseError("invalid JSON", line_no);
    }
    if (!record.is_object()) {
      throw ParseError("record is not a JSON object", line_no);
    }

    if (!record.contains("label") || !record["label"].is_number_integer()) {
      throw ValidationError("record needs an integer label", line_no);
    }
    const int label = record["label"].get<int>();

    std::string id;
    if (record.contains("id")) {
      if (!record["id"].is_string()) {
        throw ValidationError("id must be a string", line_no);
      }
      id = record["id"].get<std::string>();
    }

    double prob = 0.0;
    if (record.contains("prob")) {
      if (!record["prob"].is_number()) {
        throw ValidationError("prob must be a number", line_no);
      }
      prob = record["prob"].get<double>();
    } else if (record.contains("samples")) {
      const auto& samples = record["samples"];
      if (!samples.is_array() || samples.empty()) {
        throw ValidationError("samples must be a nonempty array", line_no);
      }
      std::vector<double> values;
      values.reserve(samples.size());
      for (const auto& s : samples) {
        if (!s.is_number()) {
          throw ValidationError("samples must be numbers", line_no);
        }
        const double v = s.get<double>();
        if (!(v >= 0.0 && v <= 1.0)) {
          throw ValidationError("posterior sample outside [0,1]", line_no);
        }
        values.push_back(v);
      }
      prob = marginalize(values);
    } else {
      throw ValidationError("record has neither prob nor samples", line_no);
    }
    acc.add(label, prob, std::move(id), line_no);
  }
  return acc.finish();
}

EvalSet parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Header: label and prob are required, id optional, column order free,
  // extra columns ignored.
  std::size_t label_col = SIZE_MAX, prob_col = SIZE_MAX, id_col = SIZE_MAX;
  std::size_t header_cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split_csv(line);
    header_cols = fields.size();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i] == "label") label_col = i;
      else if (fields[i] == "prob") prob_col = i;
      else if (fields[i] == "id") id_col = i;
    }
    break;
  }
  if (label_col == SIZE_MAX || prob_col == SIZE_MAX) {
    throw ParseError("header must name label and prob columns",
                     line_no == 0 ? 1 : line_no);
  }

  Accumulator acc;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header_cols) {
      throw ParseError("row has " + std::to_string(fields.size()) +
                           " fields, header has " + std::to_string(header_cols),
                       line_no);
    }
    const double label_value = parse_double(fields[label_col], "label", line_no);
    if (label_value != 0.0 && label_value != 1.0) {
      throw ValidationError("label must be 0 or 1", line_no);
    }
    const double prob = parse_double(fields[prob_col], "prob", line_no);
    std::string id;
    if (id_col != SIZE_MAX) id = std::string(fields[id_col]);
    acc.add(static_cast<int>(label_value), prob, std::move(id), line_no);
  }
  return acc.finish();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void put_cell(json& row, json& reasons, const char* key, const MetricCell& cell) {
  if (cell.defined()) {
    row[key] = *cell.value;
  } else {
    row[key] = nullptr;
    reasons[key] = cell.reason;
  }
}

json result_to_json(const CollabResult& r) {
  json row;
  json reasons = json::object();
  row["alpha"] = r.alpha;
  row["k"] = r.k;
  row["oc_acc"] = r.oc_acc;
  put_cell(row, reasons, "oc_auroc", r.oc_auroc);
  put_cell(row, reasons, "oc_auprc", r.oc_auprc);
  put_cell(row, reasons, "review_efficiency", r.review_efficiency);
  put_cell(row, reasons, "review_effectiveness", r.review_effectiveness);
  row["base_acc"] = r.base_acc;
  put_cell(row, reasons, "base_auroc", r.base_auroc);
  put_cell(row, reasons, "base_auprc", r.base_auprc);
  if (!reasons.empty()) row["reasons"] = reasons;
  return row;
}

}  // namespace

EvalSet parse_input(std::istream& in, InputFormat format) {
  return format == InputFormat::kJsonl ? parse_jsonl(in) : parse_csv(in);
}

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string report_json(const SweepReport& report, const Provenance& provenance) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["dataset"] = {{"n", report.n},
                    {"prevalence", report.prevalence},
                    {"source", provenance.source},
                    {"digest", provenance.digest}};

  json globals;
  json reasons = json::object();
  globals["acc"] = report.globals.acc;
  put_cell(globals, reasons, "auroc", report.globals.auroc);
  put_cell(globals, reasons, "auprc", report.globals.auprc);
  globals["brier"] = report.globals.brier;
  globals["ece"] = report.globals.ece;
  put_cell(globals, reasons, "calib_auroc", report.globals.calib_auroc);
  put_cell(globals, reasons, "calib_auprc", report.globals.calib_auprc);
  globals["threshold"] = report.globals.threshold;
  globals["ece_bins"] = report.globals.ece_bins;
  if (!reasons.empty()) globals["reasons"] = reasons;
  doc["globals"] = globals;

  json bins = json::array();
  for (const auto& b : report.reliability.bins) {
    json bin;
    bin["lo"] = b.lo;
    bin["hi"] = b.hi;
    bin["count"] = b.count;
    bin["empty"] = b.empty;
    if (!b.empty) {
      bin["conf"] = b.conf;
      bin["acc"] = b.acc;
    } else {
      bin["conf"] = nullptr;
      bin["acc"] = nullptr;
    }
    bins.push_back(bin);
  }
  doc["reliability"] = {{"bin_count", report.reliability.bin_count},
                        {"ece", report.reliability.ece},
                        {"bins", bins}};

  json strategies = json::array();
  for (const auto& s : report.strategies) {
    json rows = json::array();
    for (const auto& r : s.results) rows.push_back(result_to_json(r));
    strategies.push_back({{"strategy", to_string(s.strategy)}, {"results", rows}});
  }
  doc["strategies"] = strategies;
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const SweepReport& report) {
  std::string out =
      "strategy,alpha,k,oc_acc,oc_auroc,oc_auprc,review_efficiency,"
      "review_effectiveness\n";
  auto cell = [](const MetricCell& c) {
    return c.defined() ? format_double(*c.value) : std::string();
  };
  for (const auto& s : report.strategies) {
    for (const auto& r : s.results) {
      out += to_string(s.strategy);
      out += ',';
      out += format_double(r.alpha);
      out += ',';
      out += std::to_string(r.k);
      out += ',';
      out += format_double(r.oc_acc);
      out += ',';
      out += cell(r.oc_auroc);
      out += ',';
      out += cell(r.oc_auprc);
      out += ',';
      out += cell(r.review_efficiency);
      out += ',';
      out += cell(r.review_effectiveness);
      out += '\n';
    }
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

}  // namespace

void emit_report(const SweepReport& report, const Provenance& provenance,
                 const std::filesystem::path& path) {
  write_file(path, report_json(report, provenance));
}

void emit_sweep_csv(const SweepReport& report, const std::filesystem::path& path) {
  write_file(path, sweep_csv(report));
}

void write_jsonl(const EvalSet& data, std::ostream& out) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    json record;
    if (data.has_ids() && !data.id(i).empty()) record["id"] = data.id(i);
    record["label"] = static_cast<int>(data.labels()[i]);
    record["prob"] = data.probs()[i];
    out << record.dump() << '\n';
  }
}

}  // namespace ocmetrics
