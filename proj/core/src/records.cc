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

#include <fmt/format.h>

#include <sstream>

#include "gridloc/error.h"
#include "gridloc/image_io.h"
#include "gridloc/sweep.h"
#include "json.hpp"

namespace gridloc {
namespace {

using json = nlohmann::json;

constexpr std::string_view kRecordFormat = "gridloc-records";

json ConfigToJson(const SweepConfig& c) {
  if (c.is_baseline()) return {{"baseline", true}};
  const GridConfig& g = *c.grid;
  return {{"cells", g.cells},
          {"color", ColorName(g.color)},
          {"alpha", g.alpha},
          {"line_width", g.line_width}};
}

SweepConfig ConfigFromJson(const json& j) {
  if (j.value("baseline", false)) return {};
  GridConfig g;
  g.cells = j.at("cells").get<int>();
  g.color = ColorFromName(j.at("color").get<std::string>());
  g.alpha = j.at("alpha").get<double>();
  g.line_width = j.at("line_width").get<int>();
  g.Validate();
  return SweepConfig{g};
}

json BoxToJson(const BBox& b) { return json::array({b.x1(), b.y1(), b.x2(), b.y2()}); }

json RecordToJson(const EvalRecord& r) {
  json j = {{"config", r.config_index},
            {"label", ConfigLabel(r.config)},
            {"image_id", r.image_id},
            {"annotation_id", r.annotation_id},
            {"file_name", r.file_name},
            {"width", r.image_width},
            {"height", r.image_height},
            {"category", r.category},
            {"gt_coco", {r.ground_truth.x, r.ground_truth.y, r.ground_truth.w, r.ground_truth.h}},
            {"prompt", r.prompt},
            {"response", r.response},
            {"digest", r.digest},
            {"backend_kind", r.backend_kind},
            {"latency_ms", r.latency_ms},
            {"status", TrialStatusName(r.status)}};
  if (!r.backend_error.empty()) j["backend_error"] = r.backend_error;
  if (r.parse_failure) j["parse_failure"] = ParseFailureName(*r.parse_failure);
  if (r.coordinate_mode) j["coordinate_mode"] = CoordinateModeName(*r.coordinate_mode);
  if (r.predicted) j["predicted"] = BoxToJson(*r.predicted);
  if (r.metrics) {
    j["iou"] = r.metrics->iou;
    j["giou"] = r.metrics->giou;
  }
  return j;
}

TrialStatus StatusFromName(std::string_view name) {
  for (auto s : {TrialStatus::kScored, TrialStatus::kParseFailed, TrialStatus::kBackendError}) {
    if (TrialStatusName(s) == name) return s;
  }
  throw Error(ErrorCode::kSchema, fmt::format("unknown trial status '{}'", name));
}

EvalRecord RecordFromJson(const json& j, const std::vector<SweepConfig>& configs) {
  EvalRecord r;
  r.config_index = j.at("config").get<std::size_t>();
  if (r.config_index >= configs.size()) {
    throw Error(ErrorCode::kSchema, fmt::format("record names config #{}", r.config_index));
  }
  r.config = configs[r.config_index];
  r.image_id = j.at("image_id").get<std::int64_t>();
  r.annotation_id = j.at("annotation_id").get<std::int64_t>();
  r.file_name = j.at("file_name").get<std::string>();
  r.image_width = j.at("width").get<int>();
  r.image_height = j.at("height").get<int>();
  r.category = j.at("category").get<std::string>();
  const auto& gt = j.at("gt_coco");
  r.ground_truth = {gt.at(0).get<double>(), gt.at(1).get<double>(), gt.at(2).get<double>(),
                    gt.at(3).get<double>()};
  r.prompt = j.at("prompt").get<std::string>();
  r.response = j.at("response").get<std::string>();
  r.digest = j.at("digest").get<std::string>();
  r.backend_kind = j.at("backend_kind").get<std::string>();
  r.latency_ms = j.at("latency_ms").get<double>();
  r.backend_error = j.value("backend_error", "");
  r.status = StatusFromName(j.at("status").get<std::string>());
  if (j.contains("parse_failure")) {
    r.parse_failure = ParseFailureFromName(j["parse_failure"].get<std::string>());
  }
  if (j.contains("coordinate_mode")) {
    r.coordinate_mode = j["coordinate_mode"].get<std::string>() == "fractions"
                            ? CoordinateMode::kFractions
                            : CoordinateMode::kPixels;
  }
  if (j.contains("predicted")) {
    const auto& p = j["predicted"];
    r.predicted = BBox(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>(),
                       p.at(3).get<double>());
  }
  if (j.contains("iou")) {
    r.metrics = MetricPair{j["iou"].get<double>(), j.at("giou").get<double>()};
  }
  return r;
}

}  // namespace

std::string SerializeRecordLog(const RecordLog& log) {
  std::ostringstream out;
  json configs = json::array();
  for (const auto& c : log.configs) configs.push_back(ConfigToJson(c));
  const json header = {{"format", kRecordFormat},
                       {"version", 1},
                       {"policy", FailurePolicyName(log.policy)},
                       {"extended_grammar", log.parser.extended_grammar},
                       {"records", log.records.size()},
                       {"configs", configs}};
  out << header.dump() << '\n';
  for (const auto& r : log.records) out << RecordToJson(r).dump() << '\n';
  return out.str();
}

RecordLog ParseRecordLog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "record log is empty");
  RecordLog log;
  try {
    const json header = json::parse(line);
    if (header.value("format", "") != kRecordFormat) {
      throw Error(ErrorCode::kSchema, "not a gridloc record log");
    }
    log.policy = FailurePolicyFromName(header.at("policy").get<std::string>());
    log.parser.extended_grammar = header.value("extended_grammar", false);
    for (const auto& c : header.at("configs")) log.configs.push_back(ConfigFromJson(c));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      log.records.push_back(RecordFromJson(json::parse(line), log.configs));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("record log: ") + e.what());
  }
  return log;
}

void WriteRecordLog(const std::filesystem::path& path, const RecordLog& log) {
  const std::string text = SerializeRecordLog(log);
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

RecordLog ReadRecordLog(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  return ParseRecordLog(std::string(bytes.begin(), bytes.end()));
}

}  // namespace gridloc
