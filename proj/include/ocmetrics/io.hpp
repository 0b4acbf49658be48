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

#ifndef OCMETRICS_IO_HPP_
#define OCMETRICS_IO_HPP_

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "ocmetrics/collaboration.hpp"
#include "ocmetrics/core.hpp"

namespace ocmetrics {

enum class InputFormat {
  kJsonl,  // {"id"?: string, "label": 0|1, "prob"?: number, "samples"?: [number]}
  kCsv,    // header label,prob[,id] in any column order; extra columns ignored
};

/// Parses a scored-prediction stream into a validated EvalSet. Malformed
/// lines raise ParseError with the 1-based line number; range and consistency
/// failures raise ValidationError with the same line number.
EvalSet parse_input(std::istream& in, InputFormat format);

/// Where the scored file came from, for report provenance.
struct Provenance {
  std::string source;  // path, or "-" for stdin
  std::string digest;  // fnv1a64:<hex> over the raw input bytes
};

/// FNV-1a 64-bit digest over a byte string, formatted "fnv1a64:<hex>".
std::string fnv1a_digest(std::string_view bytes);

/// Full sweep report as JSON. Undefined metrics serialize as null with the
/// reason collected in a sibling "reasons" object; numbers round-trip at full
/// precision.
std::string report_json(const SweepReport& report, const Provenance& provenance);

void emit_report(const SweepReport& report, const Provenance& provenance,
                 const std::filesystem::path& path);

/// Plot-ready sweep table with columns
/// strategy,alpha,k,oc_acc,oc_auroc,oc_auprc,review_efficiency,review_effectiveness
/// in grid order. Undefined cells are empty fields. Byte-identical across
/// runs for identical reports.
std::string sweep_csv(const SweepReport& report);

void emit_sweep_csv(const SweepReport& report, const std::filesystem::path& path);

/// Writes a dataset in the canonical JSONL schema, full precision (parsing
/// the output reproduces labels and probs bit-exactly).
void write_jsonl(const EvalSet& data, std::ostream& out);

}  // namespace ocmetrics

#endif  // OCMETRICS_IO_HPP_
