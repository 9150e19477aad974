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

#ifndef GRIDLOC_MODEL_CLIENT_H_
#define GRIDLOC_MODEL_CLIENT_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "gridloc/box.h"
#include "gridloc/error.h"
#include "gridloc/image.h"

namespace gridloc {

// ---------------------------------------------------------------------------
// Prompting

// A prompt with an `{object}` placeholder. Every template must contain the
// literal coordinate instruction "[x1, y1, x2, y2]"; the constructor throws
// Error(kConfig) otherwise.
class PromptTemplate {
 public:
  static constexpr std::string_view kPlaceholder = "{object}";
  static constexpr std::string_view kCoordinateFormat = "[x1, y1, x2, y2]";

  explicit PromptTemplate(std::string text);

  // The chain-of-thought localization prompt, with "person" generalized to
  // the placeholder.
  static const PromptTemplate& Default();

  const std::string& text() const { return text_; }
  std::string Render(std::string_view object_name) const;

 private:
  std::string text_;
};

// Throws Error(kConfig) for an empty category name.
std::string BuildPrompt(std::string_view category_name,
                        const PromptTemplate& prompt_template = PromptTemplate::Default());

// ---------------------------------------------------------------------------
// Backends

struct QueryRequest {
  const ImageBuffer* image = nullptr;
  std::string prompt;
  // Only mock backends look at this.
  std::optional<BBox> ground_truth;
};

// What a backend returns, and what the cache stores per digest.
struct QueryRecord {
  std::string digest;
  std::string response;
  double latency_ms = 0.0;
  std::string timestamp;  // ISO-8601 UTC
  std::string backend_kind;
};

std::string SerializeQueryRecord(const QueryRecord& record);
QueryRecord ParseQueryRecord(std::string_view text);

// SHA-256 over the decoded pixels, the prompt and the backend identity.
// Hashing pixels rather than encoded bytes keeps the key stable under
// lossless re-encoding.
std::string RequestDigest(const ImageBuffer& image, std::string_view prompt,
                          std::string_view backend_identity);

class Backend {
 public:
  virtual ~Backend() = default;

  // Stable description of the model behind this backend; part of the cache
  // key. Two backends with equal identities must answer identically.
  virtual std::string identity() const = 0;
  virtual std::string kind() const = 0;

  // Safe to call concurrently.
  virtual QueryRecord Query(const QueryRequest& request) = 0;
};

std::string UtcTimestamp();

// Answers "Final coordinates: [x1, y1, x2, y2]" with the ground-truth box.
class MockEchoBackend : public Backend {
 public:
  std::string identity() const override { return "mock-echo"; }
  std::string kind() const override { return "mock-echo"; }
  QueryRecord Query(const QueryRequest& request) override;
};

struct PerturbOptions {
  // Added to (x1, y1, x2, y2). Pixels, or fractions of the ground-truth
  // width (x terms) and height (y terms) when `offset_is_fraction`.
  std::array<double, 4> offset{0.0, 0.0, 0.0, 0.0};
  bool offset_is_fraction = false;
  // Half-width of the uniform per-corner jitter, same units as `offset`.
  double jitter = 0.0;
  // Chance that a reply carries no coordinates at all.
  double failure_probability = 0.0;
  std::uint64_t seed = 0;
};

// Ground truth plus a known offset and seeded noise. Randomness is derived
// from (seed, request digest), so replies do not depend on call order.
class MockPerturbBackend : public Backend {
 public:
  explicit MockPerturbBackend(PerturbOptions options);

  std::string identity() const override;
  std::string kind() const override { return "mock-perturb"; }
  QueryRecord Query(const QueryRequest& request) override;

 private:
  PerturbOptions options_;
};

// Write-through disk cache, one file per request digest. With no inner
// backend it is a pure replay layer and a miss raises Error(kCacheMiss).
// Writes go to a temporary file that is renamed into place.
class CachingBackend : public Backend {
 public:
  CachingBackend(std::unique_ptr<Backend> inner, std::filesystem::path cache_dir,
                 std::string identity);

  std::string identity() const override { return identity_; }
  std::string kind() const override;
  QueryRecord Query(const QueryRequest& request) override;

  std::filesystem::path PathFor(std::string_view digest) const;
  std::size_t hits() const;
  std::size_t misses() const;

  // Identities recorded in `cache_dir` by earlier write-through runs.
  static std::vector<std::string> RecordedIdentities(const std::filesystem::path& cache_dir);

 private:
  void RememberIdentity();

  std::unique_ptr<Backend> inner_;
  std::filesystem::path dir_;
  std::string identity_;
  mutable std::mutex mu_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
  std::uint64_t temp_counter_ = 0;
};

struct RetryPolicy {
  int max_concurrent = 4;
  int max_retries = 3;
  std::chrono::milliseconds base_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  std::uint64_t jitter_seed = 0;

  void Validate() const;
};

struct AttemptRecord {
  int attempt = 0;  // 1-based
  ErrorCode code = ErrorCode::kTransient;
  std::string message;
  std::chrono::milliseconds backoff{0};  // wait before the next attempt
};

class RetriesExhaustedError : public Error {
 public:
  explicit RetriesExhaustedError(std::vector<AttemptRecord> attempts);

  const std::vector<AttemptRecord>& attempts() const { return attempts_; }

 private:
  std::vector<AttemptRecord> attempts_;
};

// Caps in-flight requests and retries kTransient failures with capped
// exponential backoff and jitter. Everything else propagates on the first
// attempt. The concurrency slot is released while backing off.
class RetryingBackend : public Backend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingBackend(std::unique_ptr<Backend> inner, RetryPolicy policy, Sleeper sleeper = {});

  std::string identity() const override { return inner_->identity(); }
  std::string kind() const override { return inner_->kind(); }
  QueryRecord Query(const QueryRequest& request) override;

  // Delay before retry number `retry` (1-based): an equal-jitter draw from
  // [d/2, d] with d = min(max_backoff, base_backoff * 2^(retry-1)).
  std::chrono::milliseconds BackoffFor(int retry);

 private:
  std::unique_ptr<Backend> inner_;
  RetryPolicy policy_;
  Sleeper sleeper_;
  std::counting_semaphore<> slots_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

enum class Provider { kOpenAiCompatible, kAnthropic };

struct LiveOptions {
  Provider provider = Provider::kOpenAiCompatible;
  // Base URL, e.g. "https://api.openai.com/v1". The provider's route is
  // appended.
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-4o";
  // Name of the environment variable holding the API key.
  std::string api_key_env = "OPENAI_API_KEY";
  int max_tokens = 1024;
  double temperature = 0.0;
  std::chrono::seconds timeout{120};
};

// Multimodal chat request with the image attached inline as base64 PNG.
// Connection failures, 408, 429 and 5xx raise kTransient; 401/403 raise
// kAuth; any other non-2xx or an unreadable body raises kPermanent.
class LiveBackend : public Backend {
 public:
  explicit LiveBackend(LiveOptions options);

  std::string identity() const override;
  std::string kind() const override { return "live"; }
  QueryRecord Query(const QueryRequest& request) override;

  // Exposed for tests.
  std::string RequestBody(const ImageBuffer& image, const std::string& prompt) const;
  std::string ExtractText(const std::string& response_body) const;

 private:
  LiveOptions options_;
};

std::optional<Provider> ProviderFromName(std::string_view name);
std::string_view ProviderName(Provider provider);

// ---------------------------------------------------------------------------
// Configuration

enum class BackendKind { kLive, kCacheReplay, kMockEcho, kMockPerturb };

std::optional<BackendKind> BackendKindFromName(std::string_view name);
std::string_view BackendKindName(BackendKind kind);

struct BackendDescriptor {
  BackendKind kind = BackendKind::kMockEcho;
  LiveOptions live;
  PerturbOptions perturb;
  RetryPolicy retry;
  // Required for replay; for every other kind, enables write-through caching.
  std::optional<std::filesystem::path> cache_dir;
  // Identity to look up in replay mode. Empty means "the single identity
  // recorded in the cache directory".
  std::string replay_identity;
};

// Builds the stack: [cache] -> [retry + rate limit] -> backend. Mocks skip
// the retry layer; replay is the cache alone.
std::unique_ptr<Backend> MakeBackend(const BackendDescriptor& descriptor);

}  // namespace gridloc

#endif  // GRIDLOC_MODEL_CLIENT_H_
