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

#include "gridloc/sweep.h"

#include <fmt/format.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "gridloc/error.h"

namespace gridloc {

std::string ColorName(Rgb color) {
  if (color == kBlack) return "black";
  if (color == kWhite) return "white";
  return fmt::format("#{:02x}{:02x}{:02x}", color.r, color.g, color.b);
}

Rgb ColorFromName(std::string_view name) {
  if (name == "black") return kBlack;
  if (name == "white") return kWhite;
  if (name.size() == 7 && name[0] == '#') {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + 7, value, 16);
    if (ec == std::errc() && ptr == name.data() + 7) {
      return {static_cast<std::uint8_t>(value >> 16), static_cast<std::uint8_t>(value >> 8),
              static_cast<std::uint8_t>(value)};
    }
  }
  throw Error(ErrorCode::kConfig,
              fmt::format("unknown grid color '{}' (use black, white or #rrggbb)", name));
}

std::string FormatAlpha(double alpha) {
  const std::string one = fmt::format("{:.1f}", alpha);
  double parsed = 0.0;
  std::from_chars(one.data(), one.data() + one.size(), parsed);
  return parsed == alpha ? one : fmt::format("{}", alpha);
}

std::string ConfigLabel(const SweepConfig& config) {
  if (config.is_baseline()) return std::string(kBaselineLabel);
  const GridConfig& g = *config.grid;
  return fmt::format("{}×{} - {} - {}", g.cells, g.cells, ColorName(g.color),
                     FormatAlpha(g.alpha));
}

std::string ConfigSlug(const SweepConfig& config) {
  if (config.is_baseline()) return "baseline";
  const GridConfig& g = *config.grid;
  std::string color = ColorName(g.color);
  if (color.front() == '#') color.front() = 'c';
  return fmt::format("{}x{}-{}-{}", g.cells, g.cells, color, FormatAlpha(g.alpha));
}

SweepConfig ConfigFromSlug(std::string_view slug, int line_width) {
  if (slug == "baseline") return {};
  const auto bad = [&] {
    return Error(ErrorCode::kConfig,
                 fmt::format("cannot read config '{}' (expected e.g. 9x9-black-0.3)", slug));
  };
  const auto x = slug.find('x');
  const auto d1 = slug.find('-');
  const auto d2 = slug.rfind('-');
  if (x == std::string_view::npos || d1 == std::string_view::npos || d1 == d2) throw bad();
  GridConfig g;
  g.line_width = line_width;
  const auto r1 = std::from_chars(slug.data(), slug.data() + x, g.cells);
  if (r1.ec != std::errc() || r1.ptr != slug.data() + x) throw bad();
  std::string color(slug.substr(d1 + 1, d2 - d1 - 1));
  if (color.size() == 7 && color.front() == 'c') color.front() = '#';
  g.color = ColorFromName(color);
  const std::string alpha(slug.substr(d2 + 1));
  const auto r2 = std::from_chars(alpha.data(), alpha.data() + alpha.size(), g.alpha);
  if (r2.ec != std::errc() || r2.ptr != alpha.data() + alpha.size()) throw bad();
  g.Validate();
  return SweepConfig{g};
}

SweepSpec SweepSpec::Standard() {
  SweepSpec spec;
  spec.sizes = {3, 5, 7, 9, 20, 30};
  spec.colors = {kBlack, kWhite};
  spec.alphas = {0.1, 0.3, 0.5, 0.7, 1.0};
  spec.include_baseline = true;
  return spec;
}

std::vector<SweepConfig> EnumerateConfigs(const SweepSpec& spec) {
  if (spec.sizes.empty()) throw Error(ErrorCode::kConfig, "sweep has no grid sizes");
  if (spec.colors.empty()) throw Error(ErrorCode::kConfig, "sweep has no grid colors");
  if (spec.alphas.empty()) throw Error(ErrorCode::kConfig, "sweep has no alpha levels");
  std::vector<SweepConfig> configs;
  if (spec.include_baseline) configs.push_back(SweepConfig{});
  for (int size : spec.sizes) {
    for (Rgb color : spec.colors) {
      for (double alpha : spec.alphas) {
        GridConfig g{size, color, alpha, spec.line_width};
        g.Validate();
        configs.push_back(SweepConfig{g});
      }
    }
  }
  return configs;
}

std::string_view TrialStatusName(TrialStatus status) {
  switch (status) {
    case TrialStatus::kScored:
      return "scored";
    case TrialStatus::kParseFailed:
      return "parse-failed";
    case TrialStatus::kBackendError:
      return "backend-error";
  }
  return "unknown";
}

std::string_view FailurePolicyName(FailurePolicy policy) {
  return policy == FailurePolicy::kStrict ? "strict" : "lenient";
}

FailurePolicy FailurePolicyFromName(std::string_view name) {
  if (name == "lenient") return FailurePolicy::kLenient;
  if (name == "strict") return FailurePolicy::kStrict;
  throw Error(ErrorCode::kConfig,
              fmt::format("unknown failure policy '{}' (use lenient or strict)", name));
}

void ScoreRecord(EvalRecord& record, const ParserOptions& parser) {
  record.parse_failure.reset();
  record.coordinate_mode.reset();
  record.predicted.reset();
  record.metrics.reset();
  if (record.status == TrialStatus::kBackendError) return;
  const auto outcome =
      ParsePrediction(record.response, record.image_width, record.image_height, parser);
  if (const auto* failure = std::get_if<ParseFailure>(&outcome)) {
    record.status = TrialStatus::kParseFailed;
    record.parse_failure = *failure;
    return;
  }
  const auto& parsed = std::get<ParsedPrediction>(outcome);
  record.status = TrialStatus::kScored;
  record.coordinate_mode = parsed.mode;
  record.predicted = parsed.box;
  record.metrics = Score(parsed.box, record.ground_truth_box());
}

ImageBuffer PrepareImage(const ImageBuffer& original, const SweepConfig& config) {
  if (config.is_baseline()) return original;
  return Composite(original, *config.grid);
}

EvalRecord RunTrialOnPrepared(std::size_t config_index, const SweepConfig& config,
                              const SubsetEntry& entry, const ImageBuffer& prepared,
                              Backend& backend, const TrialOptions& options) {
  EvalRecord record;
  record.config_index = config_index;
  record.config = config;
  record.image_id = entry.image_id;
  record.annotation_id = entry.annotation_id;
  record.file_name = entry.file_name;
  record.image_width = entry.width;
  record.image_height = entry.height;
  record.category = entry.category;
  record.ground_truth = entry.bbox;
  record.prompt = BuildPrompt(entry.category, options.prompt);

  QueryRequest request;
  request.image = &prepared;
  request.prompt = record.prompt;
  request.ground_truth = record.ground_truth_box();
  try {
    QueryRecord reply = backend.Query(request);
    record.response = std::move(reply.response);
    record.digest = std::move(reply.digest);
    record.backend_kind = std::move(reply.backend_kind);
    record.latency_ms = reply.latency_ms;
    record.status = TrialStatus::kParseFailed;
  } catch (const Error& e) {
    if (!IsBackendFailure(e.code())) throw;
    record.status = TrialStatus::kBackendError;
    record.backend_kind = backend.kind();
    record.backend_error = e.what();
  }
  ScoreRecord(record, options.parser);
  return record;
}

EvalRecord RunTrial(std::size_t config_index, const SweepConfig& config, const SubsetEntry& entry,
                    const ImageBuffer& original, Backend& backend, const TrialOptions& options) {
  return RunTrialOnPrepared(config_index, config, entry, PrepareImage(original, config), backend,
                            options);
}

SweepReport BuildReport(const std::vector<SweepConfig>& configs,
                        const std::vector<EvalRecord>& records, FailurePolicy policy) {
  std::vector<std::vector<TrialOutcome>> outcomes(configs.size());
  for (const auto& r : records) {
    if (r.config_index >= configs.size()) {
      throw Error(ErrorCode::kSchema,
                  fmt::format("record refers to config #{} of {}", r.config_index, configs.size()));
    }
    outcomes[r.config_index].push_back(r.outcome());
  }
  SweepReport report;
  report.policy = policy;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    report.rows.push_back({configs[i], Aggregate(outcomes[i], policy)});
  }
  return report;
}

SweepReport Rescore(RecordLog& log, std::optional<FailurePolicy> policy) {
  for (auto& r : log.records) ScoreRecord(r, log.parser);
  if (policy) log.policy = *policy;
  return BuildReport(log.configs, log.records, log.policy);
}

SweepResult RunSweep(const SweepSpec& spec, const EvalSubset& subset, Backend& backend,
                     const SweepRunOptions& options) {
  if (spec.parallelism < 1) throw Error(ErrorCode::kConfig, "parallelism must be >= 1");
  const auto configs = EnumerateConfigs(spec);
  const auto& entries = subset.entries;

  // Entries of one image share a decode and a composite per config.
  std::map<std::int64_t, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < entries.size(); ++i) by_image[entries[i].image_id].push_back(i);
  std::vector<const std::vector<std::size_t>*> work;
  for (const auto& [id, idx] : by_image) work.push_back(&idx);

  const TrialOptions trial_options{spec.prompt, spec.parser};
  std::vector<std::optional<EvalRecord>> slots(configs.size() * entries.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mu;
  std::exception_ptr first_error;

  const auto worker = [&] {
    while (!abort.load()) {
      const std::size_t w = next.fetch_add(1);
      if (w >= work.size()) return;
      try {
        const auto& idx = *work[w];
        const SubsetEntry& head = entries[idx.front()];
        const ImageBuffer original =
            ResolveImage(options.image_root, head.file_name, head.width, head.height);
        for (std::size_t c = 0; c < configs.size() && !abort.load(); ++c) {
          const ImageBuffer prepared = PrepareImage(original, configs[c]);
          for (std::size_t e : idx) {
            slots[c * entries.size() + e] =
                RunTrialOnPrepared(c, configs[c], entries[e], prepared, backend, trial_options);
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        abort.store(true);
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(spec.parallelism),
                                             std::max<std::size_t>(work.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  result.log.configs = configs;
  result.log.policy = spec.policy;
  result.log.parser = spec.parser;
  for (auto& slot : slots) {
    if (!slot) continue;
    if (slot->status == TrialStatus::kBackendError) ++result.backend_failures;
    result.log.records.push_back(std::move(*slot));
  }
  if (options.record_log_path) WriteRecordLog(*options.record_log_path, result.log);
  if (first_error) std::rethrow_exception(first_error);
  result.report = BuildReport(configs, result.log.records, spec.policy);
  return result;
}

}  // namespace gridloc
