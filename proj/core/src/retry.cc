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

#include <algorithm>
#include <thread>

#include "gridloc/model_client.h"

namespace gridloc {
namespace {

std::string DescribeAttempts(const std::vector<AttemptRecord>& attempts) {
  std::string out = fmt::format("gave up after {} attempt(s)", attempts.size());
  for (const auto& a : attempts) {
    out += fmt::format("; #{} {} ({})", a.attempt, ErrorCodeName(a.code), a.message);
  }
  return out;
}

}  // namespace

void RetryPolicy::Validate() const {
  if (max_concurrent < 1) throw Error(ErrorCode::kConfig, "max concurrent requests must be >= 1");
  if (max_retries < 0) throw Error(ErrorCode::kConfig, "retry count must be >= 0");
  if (base_backoff.count() <= 0) throw Error(ErrorCode::kConfig, "base backoff must be > 0");
  if (max_backoff < base_backoff) {
    throw Error(ErrorCode::kConfig, "max backoff must not be below the base backoff");
  }
}

RetriesExhaustedError::RetriesExhaustedError(std::vector<AttemptRecord> attempts)
    : Error(ErrorCode::kRetriesExhausted, DescribeAttempts(attempts)),
      attempts_(std::move(attempts)) {}

RetryingBackend::RetryingBackend(std::unique_ptr<Backend> inner, RetryPolicy policy,
                                 Sleeper sleeper)
    : inner_(std::move(inner)),
      policy_(policy),
      sleeper_(std::move(sleeper)),
      slots_((policy.Validate(), policy.max_concurrent)),
      rng_(policy.jitter_seed) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::chrono::milliseconds RetryingBackend::BackoffFor(int retry) {
  const int shift = std::min(retry - 1, 30);
  const auto ceiling = std::min<std::int64_t>(
      policy_.max_backoff.count(), policy_.base_backoff.count() * (std::int64_t{1} << shift));
  const auto capped = std::min<std::int64_t>(ceiling, policy_.max_backoff.count());
  std::uint64_t draw;
  {
    std::lock_guard lock(rng_mu_);
    draw = rng_();
  }
  const std::int64_t half = capped / 2;
  const std::int64_t span = capped - half;
  return std::chrono::milliseconds(half + static_cast<std::int64_t>(draw % (span + 1)));
}

QueryRecord RetryingBackend::Query(const QueryRequest& request) {
  std::vector<AttemptRecord> history;
  for (int attempt = 1;; ++attempt) {
    slots_.acquire();
    try {
      QueryRecord record = inner_->Query(request);
      slots_.release();
      return record;
    } catch (const Error& e) {
      slots_.release();
      if (e.code() != ErrorCode::kTransient) throw;
      AttemptRecord rec{attempt, e.code(), e.what(), std::chrono::milliseconds(0)};
      if (attempt > policy_.max_retries) {
        history.push_back(std::move(rec));
        throw RetriesExhaustedError(std::move(history));
      }
      rec.backoff = BackoffFor(attempt);
      history.push_back(rec);
      sleeper_(rec.backoff);
    } catch (...) {
      slots_.release();
      throw;
    }
  }
}

}  // namespace gridloc
