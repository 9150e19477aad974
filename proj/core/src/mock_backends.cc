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

#include <cmath>
#include <random>
#include <string>

#include "gridloc/model_client.h"

namespace gridloc {
namespace {

const BBox& RequireGroundTruth(const QueryRequest& request, std::string_view kind) {
  if (!request.ground_truth) {
    throw Error(ErrorCode::kPermanent,
                fmt::format("{} backend needs the ground-truth box in the request", kind));
  }
  return *request.ground_truth;
}

double UnitDraw(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

QueryRecord MockEchoBackend::Query(const QueryRequest& request) {
  const BBox& gt = RequireGroundTruth(request, kind());
  QueryRecord record;
  record.digest = RequestDigest(*request.image, request.prompt, identity());
  record.response = "Final coordinates: " + gt.ToString();
  record.timestamp = UtcTimestamp();
  record.backend_kind = kind();
  return record;
}

MockPerturbBackend::MockPerturbBackend(PerturbOptions options) : options_(options) {
  if (!(options_.failure_probability >= 0.0 && options_.failure_probability <= 1.0)) {
    throw Error(ErrorCode::kConfig, "failure probability must lie in [0, 1]");
  }
  if (!(options_.jitter >= 0.0) || !std::isfinite(options_.jitter)) {
    throw Error(ErrorCode::kConfig, "jitter must be finite and non-negative");
  }
  for (double v : options_.offset) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kConfig, "offsets must be finite");
  }
}

std::string MockPerturbBackend::identity() const {
  const auto& o = options_;
  return fmt::format("mock-perturb(offset={},{},{},{};unit={};jitter={};fail={};seed={})",
                     o.offset[0], o.offset[1], o.offset[2], o.offset[3],
                     o.offset_is_fraction ? "fraction" : "px", o.jitter, o.failure_probability,
                     o.seed);
}

QueryRecord MockPerturbBackend::Query(const QueryRequest& request) {
  const BBox& gt = RequireGroundTruth(request, kind());
  QueryRecord record;
  record.digest = RequestDigest(*request.image, request.prompt, identity());
  record.timestamp = UtcTimestamp();
  record.backend_kind = kind();

  // Seed from the digest so each request sees the same draws on every run.
  std::seed_seq seq{static_cast<std::uint32_t>(options_.seed),
                    static_cast<std::uint32_t>(options_.seed >> 32),
                    static_cast<std::uint32_t>(std::stoul(record.digest.substr(0, 8), nullptr, 16)),
                    static_cast<std::uint32_t>(std::stoul(record.digest.substr(8, 8), nullptr, 16))};
  std::mt19937_64 engine(seq);

  if (options_.failure_probability > 0.0 && UnitDraw(engine) < options_.failure_probability) {
    record.response = "I looked across the image but I am unable to locate the object.";
    return record;
  }
  const double scale[4] = {gt.width(), gt.height(), gt.width(), gt.height()};
  const double base[4] = {gt.x1(), gt.y1(), gt.x2(), gt.y2()};
  double out[4];
  for (int k = 0; k < 4; ++k) {
    const double unit = options_.offset_is_fraction ? scale[k] : 1.0;
    double delta = options_.offset[k];
    if (options_.jitter > 0.0) delta += (2.0 * UnitDraw(engine) - 1.0) * options_.jitter;
    out[k] = base[k] + delta * unit;
  }
  record.response = fmt::format(
      "The object spans most of its grid cells; reading its edges against the nearest lines.\n"
      "Final coordinates: [{}, {}, {}, {}]",
      out[0], out[1], out[2], out[3]);
  return record;
}

}  // namespace gridloc
