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

#include "cli.h"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gridloc/dataset.h"
#include "gridloc/digest.h"
#include "gridloc/error.h"
#include "gridloc/grid.h"
#include "gridloc/image_io.h"
#include "gridloc/metrics.h"
#include "gridloc/model_client.h"
#include "gridloc/parser.h"
#include "gridloc/report.h"
#include "gridloc/sweep.h"
#include "gridloc/visualize.h"
#include "json.hpp"

namespace gridloc::cli {
namespace {

namespace fs = std::filesystem;

// Raised for bad flag values that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidBox:
      return kExitUsage;
    default:
      return kExitInfrastructure;
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string FormatScore(double v) {
  std::string s = fmt::format("{:.6f}", v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

// A whole argument must be one four-number tuple.
BBox ParseBoxArgument(const std::string& text, const char* flag) {
  const auto extracted = ExtractTuple(text);
  const auto* tuple = std::get_if<RawTuple>(&extracted);
  const auto is_blank = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  if (tuple == nullptr ||
      !std::all_of(text.begin(), text.begin() + static_cast<long>(tuple->begin), is_blank) ||
      !std::all_of(text.begin() + static_cast<long>(tuple->end), text.end(), is_blank)) {
    throw UsageError(fmt::format("{} expects a box like \"[x1, y1, x2, y2]\", got \"{}\"", flag, text));
  }
  const auto& v = tuple->values;
  try {
    return BBox(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    throw UsageError(fmt::format("{}: {}", flag, e.what()));
  }
}

// ---------------------------------------------------------------------------
// overlay

struct OverlayArgs {
  std::string input;
  std::string output = "overlay.png";
  int cells = 9;
  std::string color = "black";
  double alpha = 0.3;
  int line_width = 1;
};

int RunOverlay(const OverlayArgs& a, std::ostream& out) {
  GridConfig config{a.cells, ColorFromName(a.color), a.alpha, a.line_width};
  config.Validate();
  const ImageBuffer image = ReadImage(a.input);
  WriteImage(a.output, Composite(image, config));
  out << fmt::format("wrote {} ({}x{}, {}x{} {} grid, alpha {})\n", a.output, image.width(),
                     image.height(), a.cells, a.cells, a.color, FormatAlpha(a.alpha));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score

int RunScore(const std::string& gt_text, const std::string& pred_text, std::ostream& out) {
  const BBox gt = ParseBoxArgument(gt_text, "--gt");
  const BBox pred = ParseBoxArgument(pred_text, "--pred");
  const MetricPair m = Score(pred, gt);
  out << "iou=" << FormatScore(m.iou) << "\n" << "giou=" << FormatScore(m.giou) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string annotations;
  std::size_t n = 500;
  std::uint64_t seed = 0;
  std::string output = "subset.jsonl";
};

int RunSample(const SampleArgs& a, std::ostream& out) {
  const DatasetIndex index = LoadAnnotations(a.annotations);
  const EvalSubset subset = SampleSubset(index, a.n, a.seed);
  WriteManifest(a.output, subset);
  out << fmt::format("wrote {}: {} images, {} objects, {:.2f} objects per image\n", a.output,
                     subset.image_count(), subset.entries.size(), subset.mean_objects_per_image());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// comparison panels

// Left: original with baseline predictions (GT only without a baseline run).
// Right: the config's model input with its predictions.
ImageBuffer RenderComparison(const RecordLog& log, std::size_t config_index,
                             std::int64_t image_id, const ImageBuffer& original,
                             const AnnotationStyle& style) {
  std::optional<std::size_t> baseline_index;
  for (std::size_t i = 0; i < log.configs.size(); ++i) {
    if (log.configs[i].is_baseline()) baseline_index = i;
  }
  ImageBuffer left = original;
  ImageBuffer right = PrepareImage(original, log.configs[config_index]);
  for (const auto& r : log.records) {
    if (r.image_id != image_id) continue;
    if (r.config_index == config_index) {
      right = RenderAnnotated(right, r.ground_truth_box(), r.predicted, style);
    } else if (baseline_index && r.config_index == *baseline_index) {
      left = RenderAnnotated(left, r.ground_truth_box(), r.predicted, style);
    }
  }
  if (!baseline_index) {
    for (const auto& r : log.records) {
      if (r.image_id == image_id && r.config_index == config_index) {
        StrokeBox(left, r.ground_truth_box(), style.gt_color, style.stroke_width);
      }
    }
  }
  return SideBySide(left, right);
}

// The k best and k worst images of each grid config, ranked by mean IoU over
// their scored trials.
std::size_t WritePanels(const RecordLog& log, const fs::path& image_root, const fs::path& dir,
                        int k) {
  fs::create_directories(dir);
  std::size_t written = 0;
  for (std::size_t c = 0; c < log.configs.size(); ++c) {
    if (log.configs[c].is_baseline()) continue;
    std::map<std::int64_t, std::pair<double, int>> per_image;
    std::map<std::int64_t, const EvalRecord*> any_record;
    for (const auto& r : log.records) {
      if (r.config_index != c || !r.metrics) continue;
      auto& acc = per_image[r.image_id];
      acc.first += r.metrics->iou;
      acc.second += 1;
      any_record[r.image_id] = &r;
    }
    std::vector<std::pair<double, std::int64_t>> ranked;
    for (const auto& [id, acc] : per_image) ranked.emplace_back(acc.first / acc.second, id);
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::int64_t> chosen;
    for (int i = 0; i < k && i < static_cast<int>(ranked.size()); ++i) {
      chosen.push_back(ranked[static_cast<std::size_t>(i)].second);
      chosen.push_back(ranked[ranked.size() - 1 - static_cast<std::size_t>(i)].second);
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    for (std::int64_t id : chosen) {
      const EvalRecord& r = *any_record.at(id);
      const ImageBuffer original =
          ResolveImage(image_root, r.file_name, r.image_width, r.image_height);
      const ImageBuffer panel = RenderComparison(log, c, id, original, {});
      WriteImage(dir / fmt::format("{}_{}.png", id, ConfigSlug(log.configs[c])), panel);
      ++written;
    }
  }
  return written;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string annotations;
  std::string images;
  std::string manifest;
  std::size_t subset = 500;
  std::uint64_t seed = 0;
  std::vector<int> sizes{3, 5, 7, 9, 20, 30};
  std::vector<std::string> colors{"black", "white"};
  std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 1.0};
  int line_width = 1;
  bool baseline = true;
  std::string policy = "lenient";
  bool extended_grammar = false;
  int parallel = 4;
  std::string out_dir;
  std::string prompt_file;
  int panels = 0;

  std::string backend = "mock-echo";
  std::string cache;
  std::string replay_identity;
  std::vector<double> offset{0, 0, 0, 0};
  bool offset_fraction = false;
  double jitter = 0.0;
  double fail_prob = 0.0;
  std::uint64_t mock_seed = 0;

  std::string provider = "openai";
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-4o";
  std::string api_key_env = "OPENAI_API_KEY";
  int max_tokens = 1024;
  double temperature = 0.0;
  int timeout_s = 120;
  int max_concurrent = 4;
  int retries = 3;
  int backoff_ms = 500;
  int max_backoff_ms = 30000;
};

BackendDescriptor DescriptorFrom(const SweepArgs& a) {
  BackendDescriptor d;
  const auto kind = BackendKindFromName(a.backend);
  if (!kind) throw UsageError("unknown backend '" + a.backend + "'");
  d.kind = *kind;
  if (!a.cache.empty()) d.cache_dir = fs::path(a.cache);
  d.replay_identity = a.replay_identity;
  if (a.offset.size() != 4) throw UsageError("--offset takes exactly four values");
  std::copy(a.offset.begin(), a.offset.end(), d.perturb.offset.begin());
  d.perturb.offset_is_fraction = a.offset_fraction;
  d.perturb.jitter = a.jitter;
  d.perturb.failure_probability = a.fail_prob;
  d.perturb.seed = a.mock_seed;
  const auto provider = ProviderFromName(a.provider);
  if (!provider) throw UsageError("unknown provider '" + a.provider + "'");
  d.live.provider = *provider;
  d.live.endpoint = a.endpoint;
  d.live.model = a.model;
  d.live.api_key_env = a.api_key_env;
  d.live.max_tokens = a.max_tokens;
  d.live.temperature = a.temperature;
  d.live.timeout = std::chrono::seconds(a.timeout_s);
  d.retry.max_concurrent = a.max_concurrent;
  d.retry.max_retries = a.retries;
  d.retry.base_backoff = std::chrono::milliseconds(a.backoff_ms);
  d.retry.max_backoff = std::chrono::milliseconds(a.max_backoff_ms);
  return d;
}

// The effective settings as a config file that reproduces the run.
std::string ResolvedConfig(const SweepArgs& a) {
  const auto quoted = [](const std::string& v) { return nlohmann::json(v).dump(); };
  const auto list = [](const auto& values, const auto& render) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ", ";
      out += render(values[i]);
    }
    return out + "]";
  };
  const auto number = [](double v) { return fmt::format("{}", v); };
  std::string out = "[sweep]\n";
  const auto put = [&](const char* key, const std::string& value) {
    out += fmt::format("{}={}\n", key, value);
  };
  if (!a.annotations.empty()) put("annotations", quoted(a.annotations));
  put("images", quoted(a.images));
  if (!a.manifest.empty()) put("manifest", quoted(a.manifest));
  put("subset", std::to_string(a.subset));
  put("seed", std::to_string(a.seed));
  put("sizes", list(a.sizes, [](int v) { return std::to_string(v); }));
  put("colors", list(a.colors, quoted));
  put("alphas", list(a.alphas, number));
  put("line-width", std::to_string(a.line_width));
  put("baseline", a.baseline ? "true" : "false");
  put("policy", quoted(a.policy));
  put("extended-grammar", a.extended_grammar ? "true" : "false");
  put("parallel", std::to_string(a.parallel));
  if (!a.prompt_file.empty()) put("prompt-file", quoted(a.prompt_file));
  put("panels", std::to_string(a.panels));
  put("backend", quoted(a.backend));
  if (!a.cache.empty()) put("cache", quoted(a.cache));
  if (!a.replay_identity.empty()) put("replay-identity", quoted(a.replay_identity));
  put("offset", list(a.offset, number));
  put("offset-fraction", a.offset_fraction ? "true" : "false");
  put("jitter", number(a.jitter));
  put("fail-prob", number(a.fail_prob));
  put("mock-seed", std::to_string(a.mock_seed));
  put("provider", quoted(a.provider));
  put("endpoint", quoted(a.endpoint));
  put("model", quoted(a.model));
  put("api-key-env", quoted(a.api_key_env));
  put("max-tokens", std::to_string(a.max_tokens));
  put("temperature", number(a.temperature));
  put("timeout", std::to_string(a.timeout_s));
  put("max-concurrent", std::to_string(a.max_concurrent));
  put("retries", std::to_string(a.retries));
  put("backoff-ms", std::to_string(a.backoff_ms));
  put("max-backoff-ms", std::to_string(a.max_backoff_ms));
  return out;
}

int RunSweepCommand(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path out_dir(a.out_dir);
  fs::create_directories(out_dir);
  WriteText(out_dir / "resolved_config.ini", ResolvedConfig(a));

  SweepSpec spec;
  spec.sizes = a.sizes;
  for (const auto& c : a.colors) spec.colors.push_back(ColorFromName(c));
  spec.alphas = a.alphas;
  spec.line_width = a.line_width;
  spec.include_baseline = a.baseline;
  spec.policy = FailurePolicyFromName(a.policy);
  spec.parser.extended_grammar = a.extended_grammar;
  spec.parallelism = a.parallel;
  if (!a.prompt_file.empty()) {
    const auto bytes = ReadFileBytes(a.prompt_file);
    spec.prompt = PromptTemplate(std::string(bytes.begin(), bytes.end()));
  }
  EnumerateConfigs(spec);  // validate axes before touching the dataset

  EvalSubset subset;
  if (!a.manifest.empty()) {
    subset = ReadManifest(a.manifest);
  } else {
    if (a.annotations.empty()) throw UsageError("sweep needs --manifest or --annotations");
    subset = SampleSubset(LoadAnnotations(a.annotations), a.subset, a.seed);
    WriteManifest(out_dir / "subset.jsonl", subset);
  }

  const BackendDescriptor descriptor = DescriptorFrom(a);
  const auto backend = MakeBackend(descriptor);

  const std::string started = UtcTimestamp();
  SweepRunOptions options{a.images, out_dir / "records.jsonl"};
  const SweepResult result = RunSweep(spec, subset, *backend, options);

  WriteText(out_dir / "report.csv", RenderCsv(result.report));
  const std::string table = RenderTable(result.report);
  WriteText(out_dir / "report.txt", table);

  const nlohmann::json meta = {
      {"seed", subset.seed},
      {"source_sha256", subset.source_sha256},
      {"subset_sha256", Sha256Hex(SerializeManifest(subset))},
      {"images", subset.image_count()},
      {"entries", subset.entries.size()},
      {"mean_objects_per_image", subset.mean_objects_per_image()},
      {"backend_kind", BackendKindName(descriptor.kind)},
      {"backend_identity", backend->identity()},
      {"configs", result.log.configs.size()},
      {"backend_failures", result.backend_failures},
      {"started", started},
      {"finished", UtcTimestamp()}};
  WriteText(out_dir / "run.json", meta.dump(2) + "\n");

  if (a.panels > 0) {
    const std::size_t n = WritePanels(result.log, a.images, out_dir / "panels", a.panels);
    out << fmt::format("wrote {} comparison panel(s) to {}\n", n, (out_dir / "panels").string());
  }
  out << table;
  if (result.backend_failures > 0) {
    err << fmt::format("gridloc: {} trial(s) hit backend errors; see {}\n", result.backend_failures,
                       (out_dir / "records.jsonl").string());
    return kExitPartial;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rescore / compare

int RunRescore(const std::string& records, const std::string& policy, const std::string& out_dir,
               std::ostream& out) {
  RecordLog log = ReadRecordLog(records);
  std::optional<FailurePolicy> override_policy;
  if (!policy.empty()) override_policy = FailurePolicyFromName(policy);
  const SweepReport report = Rescore(log, override_policy);
  const std::string table = RenderTable(report);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    WriteText(fs::path(out_dir) / "report.csv", RenderCsv(report));
    WriteText(fs::path(out_dir) / "report.txt", table);
  }
  out << table;
  return kExitOk;
}

int RunCompare(const std::string& records, const std::string& images, std::int64_t image_id,
               const std::string& config_slug, const std::string& out_dir, std::ostream& out) {
  const RecordLog log = ReadRecordLog(records);
  std::optional<std::size_t> config_index;
  for (std::size_t i = 0; i < log.configs.size(); ++i) {
    if (ConfigSlug(log.configs[i]) == config_slug) config_index = i;
  }
  if (!config_index) {
    throw UsageError(fmt::format("record log has no configuration '{}'", config_slug));
  }
  const auto it = std::find_if(log.records.begin(), log.records.end(),
                               [&](const EvalRecord& r) { return r.image_id == image_id; });
  if (it == log.records.end()) {
    throw UsageError(fmt::format("record log has no trials for image {}", image_id));
  }
  const ImageBuffer original = ResolveImage(images, it->file_name, it->image_width, it->image_height);
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / fmt::format("{}_compare.png", image_id);
  WriteImage(path, RenderComparison(log, *config_index, image_id, original, {}));
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid-overlay localization evaluation harness", "gridloc"};
  app.require_subcommand(1);

  OverlayArgs overlay;
  auto* overlay_cmd = app.add_subcommand("overlay", "Alpha-blend a grid onto one image");
  overlay_cmd->add_option("input", overlay.input, "Input PNG or JPEG")->required();
  overlay_cmd->add_option("-o,--output", overlay.output, "Output image (PNG unless .jpg)")
      ->capture_default_str();
  overlay_cmd->add_option("--cells", overlay.cells, "Cells per axis")->capture_default_str();
  overlay_cmd->add_option("--color", overlay.color, "black, white or #rrggbb")
      ->capture_default_str();
  overlay_cmd->add_option("--alpha", overlay.alpha, "Grid weight in [0, 1]")->capture_default_str();
  overlay_cmd->add_option("--line-width", overlay.line_width, "Line width in pixels")
      ->capture_default_str();

  std::string gt_text;
  std::string pred_text;
  auto* score_cmd = app.add_subcommand("score", "IoU and GIoU of two boxes");
  score_cmd->add_option("--gt", gt_text, "Ground truth \"[x1, y1, x2, y2]\"")->required();
  score_cmd->add_option("--pred", pred_text, "Prediction \"[x1, y1, x2, y2]\"")->required();

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a stratified evaluation subset");
  sample_cmd->add_option("--annotations", sample.annotations, "COCO instances JSON")->required();
  sample_cmd->add_option("-n,--subset", sample.n, "Number of images")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Sampling seed")->capture_default_str();
  sample_cmd->add_option("-o,--output", sample.output, "Manifest path")->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the grid configuration sweep");
  // Read by the root app; --config after "sweep" falls through to it.
  app.set_config("--config", "", "INI/TOML file; sweep settings go in a [sweep] section, flags override them");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--annotations", sweep.annotations, "COCO instances JSON");
  sweep_cmd->add_option("--images", sweep.images, "Image root directory")->required();
  sweep_cmd->add_option("--manifest", sweep.manifest, "Existing subset manifest");
  sweep_cmd->add_option("--subset", sweep.subset, "Images to sample without --manifest")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Sampling seed")->capture_default_str();
  sweep_cmd->add_option("--sizes", sweep.sizes, "Grid cells per axis")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--colors", sweep.colors, "Grid colors")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--alphas", sweep.alphas, "Grid weights")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--line-width", sweep.line_width, "Line width")->capture_default_str();
  sweep_cmd->add_flag("--baseline,!--no-baseline", sweep.baseline, "Include the no-grid row")
      ->capture_default_str();
  sweep_cmd->add_option("--policy", sweep.policy, "Failed trials: lenient (drop) or strict")
      ->check(CLI::IsMember({"lenient", "strict"}))
      ->capture_default_str();
  sweep_cmd->add_flag("--extended-grammar", sweep.extended_grammar,
                      "Also parse keyed x1=.. y1=.. answers");
  sweep_cmd->add_option("--parallel", sweep.parallel, "Concurrent trials")->capture_default_str();
  sweep_cmd->add_option("-o,--out", sweep.out_dir, "Output directory")->required();
  sweep_cmd->add_option("--prompt-file", sweep.prompt_file, "Prompt template with {object}");
  sweep_cmd->add_option("--panels", sweep.panels, "Best/worst comparison panels per config")
      ->capture_default_str();
  sweep_cmd
      ->add_option("--backend", sweep.backend,
                   "Response source; cache-replay is an alias of replay")
      ->check(CLI::IsMember({"live", "replay", "cache-replay", "mock-echo", "mock-perturb"}))
      ->capture_default_str();
  sweep_cmd->add_option("--cache", sweep.cache, "Response cache directory");
  sweep_cmd->add_option("--replay-identity", sweep.replay_identity,
                        "Backend identity to replay from the cache");
  sweep_cmd->add_option("--offset", sweep.offset, "mock-perturb corner offsets x1,y1,x2,y2")
      ->delimiter(',')
      ->expected(4)
      ->capture_default_str();
  sweep_cmd->add_flag("--offset-fraction", sweep.offset_fraction,
                      "Offsets are fractions of the box size");
  sweep_cmd->add_option("--jitter", sweep.jitter, "mock-perturb uniform jitter half-width")
      ->capture_default_str();
  sweep_cmd->add_option("--fail-prob", sweep.fail_prob, "mock-perturb failure probability")
      ->capture_default_str();
  sweep_cmd->add_option("--mock-seed", sweep.mock_seed, "mock-perturb seed")->capture_default_str();
  sweep_cmd->add_option("--provider", sweep.provider, "openai or anthropic")->capture_default_str();
  sweep_cmd->add_option("--endpoint", sweep.endpoint, "API base URL")->capture_default_str();
  sweep_cmd->add_option("--model", sweep.model, "Model name")->capture_default_str();
  sweep_cmd->add_option("--api-key-env", sweep.api_key_env, "Variable holding the API key")
      ->capture_default_str();
  sweep_cmd->add_option("--max-tokens", sweep.max_tokens)->capture_default_str();
  sweep_cmd->add_option("--temperature", sweep.temperature)->capture_default_str();
  sweep_cmd->add_option("--timeout", sweep.timeout_s, "Request timeout (s)")->capture_default_str();
  sweep_cmd->add_option("--max-concurrent", sweep.max_concurrent, "In-flight request cap")
      ->capture_default_str();
  sweep_cmd->add_option("--retries", sweep.retries, "Retries for transient failures")
      ->capture_default_str();
  sweep_cmd->add_option("--backoff-ms", sweep.backoff_ms, "Base retry backoff")
      ->capture_default_str();
  sweep_cmd->add_option("--max-backoff-ms", sweep.max_backoff_ms, "Backoff cap")
      ->capture_default_str();

  std::string records;
  std::string rescore_policy;
  std::string rescore_out;
  auto* rescore_cmd = app.add_subcommand("rescore", "Rebuild a report from a record log");
  rescore_cmd->add_option("--records", records, "records.jsonl from a sweep")->required();
  rescore_cmd->add_option("--policy", rescore_policy, "Override the failure policy")
      ->check(CLI::IsMember({"lenient", "strict"}));
  rescore_cmd->add_option("-o,--out", rescore_out, "Write report.csv/report.txt here");

  std::string compare_records;
  std::string compare_images;
  std::int64_t compare_image_id = 0;
  std::string compare_config = "9x9-black-0.3";
  std::string compare_out = ".";
  auto* compare_cmd = app.add_subcommand("compare", "Baseline vs grid panel for one image");
  compare_cmd->add_option("--records", compare_records, "records.jsonl from a sweep")->required();
  compare_cmd->add_option("--images", compare_images, "Image root directory")->required();
  compare_cmd->add_option("--image-id", compare_image_id, "Image id")->required();
  compare_cmd->add_option("--config", compare_config, "Configuration, e.g. 9x9-black-0.3")
      ->capture_default_str();
  compare_cmd->add_option("-o,--out", compare_out, "Output directory")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*overlay_cmd) return RunOverlay(overlay, out);
    if (*score_cmd) return RunScore(gt_text, pred_text, out);
    if (*sample_cmd) return RunSample(sample, out);
    if (*sweep_cmd) return RunSweepCommand(sweep, out, err);
    if (*rescore_cmd) return RunRescore(records, rescore_policy, rescore_out, out);
    if (*compare_cmd) {
      return RunCompare(compare_records, compare_images, compare_image_id, compare_config,
                        compare_out, out);
    }
  } catch (const UsageError& e) {
    err << "gridloc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "gridloc: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "gridloc: " << e.what() << "\n";
    return kExitInfrastructure;
  }
  return kExitUsage;
}

}  // namespace gridloc::cli
