// Copyright 2026 The gridloc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDLOC_SWEEP_H_
#define GRIDLOC_SWEEP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridloc/box.h"
#include "gridloc/dataset.h"
#include "gridloc/grid.h"
#include "gridloc/metrics.h"
#include "gridloc/model_client.h"
#include "gridloc/parser.h"

namespace gridloc {

// A sweep row: a grid configuration, or the no-grid baseline.
struct SweepConfig {
  std::optional<GridConfig> grid;

  bool is_baseline() const { return !grid.has_value(); }

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

inline constexpr std::string_view kBaselineLabel = "Original images+CoT";

// "black", "white", or "#rrggbb".
std::string ColorName(Rgb color);
// Accepts the names above; throws Error(kConfig) otherwise.
Rgb ColorFromName(std::string_view name);
// One decimal when exact ("0.3", "1.0"), shortest round-trip otherwise.
std::string FormatAlpha(double alpha);

// "9×9 - black - 0.3", or the baseline label.
std::string ConfigLabel(const SweepConfig& config);
// Filename-safe form: "9x9-black-0.3" or "baseline".
std::string ConfigSlug(const SweepConfig& config);
// Inverse of ConfigSlug for the given line width.
SweepConfig ConfigFromSlug(std::string_view slug, int line_width = 1);

struct SweepSpec {
  std::vector<int> sizes;
  std::vector<Rgb> colors;
  std::vector<double> alphas;
  int line_width = 1;
  bool include_baseline = true;
  FailurePolicy policy = FailurePolicy::kLenient;
  int parallelism = 4;
  ParserOptions parser;
  PromptTemplate prompt = PromptTemplate::Default();

  // Sizes {3,5,7,9,20,30} x colors {black,white} x alphas {0.1,0.3,0.5,0.7,1.0}
  // plus the baseline: 61 configurations.
  static SweepSpec Standard();
};

// Baseline first (when enabled), then size-major, color, alpha, each axis in
// the order given. Throws Error(kConfig) for an empty axis or an invalid
// grid configuration.
std::vector<SweepConfig> EnumerateConfigs(const SweepSpec& spec);

enum class TrialStatus { kScored, kParseFailed, kBackendError };

std::string_view TrialStatusName(TrialStatus status);

struct EvalRecord {
  std::size_t config_index = 0;
  SweepConfig config;
  std::int64_t image_id = 0;
  std::int64_t annotation_id = 0;
  std::string file_name;
  int image_width = 0;
  int image_height = 0;
  std::string category;
  CocoBox ground_truth;
  std::string prompt;
  std::string response;
  std::string digest;
  std::string backend_kind;
  double latency_ms = 0.0;
  std::string backend_error;

  // Derived from `response` by ScoreRecord.
  TrialStatus status = TrialStatus::kParseFailed;
  std::optional<ParseFailure> parse_failure;
  std::optional<CoordinateMode> coordinate_mode;
  std::optional<BBox> predicted;
  std::optional<MetricPair> metrics;

  BBox ground_truth_box() const { return CocoToCorners(ground_truth); }
  TrialOutcome outcome() const { return metrics; }
};

// Recomputes the derived fields from the raw response. Backend-error records
// keep their status. Scoring is a pure function of the record, which is what
// makes rescoring reproduce a report exactly.
void ScoreRecord(EvalRecord& record, const ParserOptions& parser = {});

struct TrialOptions {
  PromptTemplate prompt = PromptTemplate::Default();
  ParserOptions parser;
};

// Composites (or passes through, for the baseline), prompts with the entry's
// category, queries and scores. Backend failures are captured in the record;
// anything else propagates.
EvalRecord RunTrial(std::size_t config_index, const SweepConfig& config,
                    const SubsetEntry& entry, const ImageBuffer& original, Backend& backend,
                    const TrialOptions& options = {});

// Same, given the already-composited image.
EvalRecord RunTrialOnPrepared(std::size_t config_index, const SweepConfig& config,
                              const SubsetEntry& entry, const ImageBuffer& prepared,
                              Backend& backend, const TrialOptions& options);

// The image a config feeds to the model: the original for the baseline.
ImageBuffer PrepareImage(const ImageBuffer& original, const SweepConfig& config);

struct ReportRow {
  SweepConfig config;
  AggregateSummary summary;
};

struct SweepReport {
  FailurePolicy policy = FailurePolicy::kLenient;
  std::vector<ReportRow> rows;
};

// One row per config, in config order, aggregating the records that carry
// each config index.
SweepReport BuildReport(const std::vector<SweepConfig>& configs,
                        const std::vector<EvalRecord>& records, FailurePolicy policy);

// Record log: one JSON header line (configs, policy, parser options) then
// one JSON line per record, ordered by (config, entry).
struct RecordLog {
  std::vector<SweepConfig> configs;
  FailurePolicy policy = FailurePolicy::kLenient;
  ParserOptions parser;
  std::vector<EvalRecord> records;
};

std::string SerializeRecordLog(const RecordLog& log);
RecordLog ParseRecordLog(const std::string& text);
void WriteRecordLog(const std::filesystem::path& path, const RecordLog& log);
RecordLog ReadRecordLog(const std::filesystem::path& path);

// Re-parses every persisted response and rebuilds the report. Never touches
// a backend.
SweepReport Rescore(RecordLog& log, std::optional<FailurePolicy> policy = std::nullopt);

struct SweepResult {
  RecordLog log;
  SweepReport report;
  std::size_t backend_failures = 0;
};

struct SweepRunOptions {
  std::filesystem::path image_root;
  // When set, the record log is written here, including partial results if
  // the sweep aborts.
  std::optional<std::filesystem::path> record_log_path;
};

// Runs every config over every subset entry with `spec.parallelism` workers.
// Each worker decodes one image at a time and runs all configs on it.
// Results do not depend on scheduling.
SweepResult RunSweep(const SweepSpec& spec, const EvalSubset& subset, Backend& backend,
                     const SweepRunOptions& options);

std::string_view FailurePolicyName(FailurePolicy policy);
FailurePolicy FailurePolicyFromName(std::string_view name);

}  // namespace gridloc

#endif  // GRIDLOC_SWEEP_H_
