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

#include <ctime>

#include "gridloc/digest.h"
#include "gridloc/model_client.h"
#include "json.hpp"

namespace gridloc {

using json = nlohmann::json;

std::string RequestDigest(const ImageBuffer& image, std::string_view prompt,
                          std::string_view backend_identity) {
  Sha256 sha;
  sha.Update("gridloc-request-v1\n");
  sha.Update(fmt::format("{}x{}\n", image.width(), image.height()));
  sha.Update(image.bytes());
  sha.Update(fmt::format("\n{}\n", prompt.size()));
  sha.Update(prompt);
  sha.Update("\n");
  sha.Update(backend_identity);
  return sha.FinishHex();
}

std::string SerializeQueryRecord(const QueryRecord& record) {
  const json j = {{"format", "gridloc-query-record"},
                  {"version", 1},
                  {"digest", record.digest},
                  {"backend_kind", record.backend_kind},
                  {"timestamp", record.timestamp},
                  {"latency_ms", record.latency_ms},
                  {"response", record.response}};
  return j.dump(2) + "\n";
}

QueryRecord ParseQueryRecord(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "gridloc-query-record") {
      throw Error(ErrorCode::kSchema, "not a gridloc query record");
    }
    QueryRecord r;
    r.digest = j.at("digest").get<std::string>();
    r.backend_kind = j.at("backend_kind").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.latency_ms = j.at("latency_ms").get<double>();
    r.response = j.at("response").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("query record: ") + e.what());
  }
}

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<BackendKind> BackendKindFromName(std::string_view name) {
  if (name == "live") return BackendKind::kLive;
  if (name == "replay" || name == "cache-replay") return BackendKind::kCacheReplay;
  if (name == "mock-echo") return BackendKind::kMockEcho;
  if (name == "mock-perturb") return BackendKind::kMockPerturb;
  return std::nullopt;
}

std::string_view BackendKindName(BackendKind kind) {
  switch (kind) {
    case BackendKind::kLive:
      return "live";
    case BackendKind::kCacheReplay:
      return "cache-replay";
    case BackendKind::kMockEcho:
      return "mock-echo";
    case BackendKind::kMockPerturb:
      return "mock-perturb";
  }
  return "unknown";
}

std::optional<Provider> ProviderFromName(std::string_view name) {
  if (name == "openai" || name == "openai-compatible") return Provider::kOpenAiCompatible;
  if (name == "anthropic") return Provider::kAnthropic;
  return std::nullopt;
}

std::string_view ProviderName(Provider provider) {
  return provider == Provider::kAnthropic ? "anthropic" : "openai";
}

std::unique_ptr<Backend> MakeBackend(const BackendDescriptor& d) {
  std::unique_ptr<Backend> backend;
  switch (d.kind) {
    case BackendKind::kCacheReplay: {
      if (!d.cache_dir) throw Error(ErrorCode::kConfig, "replay backend needs a cache directory");
      std::string identity = d.replay_identity;
      if (identity.empty()) {
        const auto known = CachingBackend::RecordedIdentities(*d.cache_dir);
        if (known.size() != 1) {
          throw Error(ErrorCode::kConfig,
                      fmt::format("cache {} records {} backend identities; name one explicitly",
                                  d.cache_dir->string(), known.size()));
        }
        identity = known.front();
      }
      return std::make_unique<CachingBackend>(nullptr, *d.cache_dir, identity);
    }
    case BackendKind::kMockEcho:
      backend = std::make_unique<MockEchoBackend>();
      break;
    case BackendKind::kMockPerturb:
      backend = std::make_unique<MockPerturbBackend>(d.perturb);
      break;
    case BackendKind::kLive:
      backend = std::make_unique<RetryingBackend>(std::make_unique<LiveBackend>(d.live), d.retry);
      break;
  }
  if (d.cache_dir) {
    std::string identity = backend->identity();
    backend = std::make_unique<CachingBackend>(std::move(backend), *d.cache_dir, identity);
  }
  return backend;
}

}  // namespace gridloc
