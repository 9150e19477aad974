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

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "gridloc/image_io.h"
#include "gridloc/model_client.h"

namespace gridloc {
namespace {

constexpr char kIdentityFile[] = "IDENTITIES";

std::string ReadText(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace

CachingBackend::CachingBackend(std::unique_ptr<Backend> inner, std::filesystem::path cache_dir,
                               std::string identity)
    : inner_(std::move(inner)), dir_(std::move(cache_dir)), identity_(std::move(identity)) {
  if (inner_) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create cache directory " + dir_.string());
    RememberIdentity();
  } else if (!std::filesystem::is_directory(dir_)) {
    throw Error(ErrorCode::kIo, "cache directory not found: " + dir_.string());
  }
}

std::string CachingBackend::kind() const { return inner_ ? inner_->kind() : "cache-replay"; }

std::filesystem::path CachingBackend::PathFor(std::string_view digest) const {
  return dir_ / (std::string(digest) + ".json");
}

std::size_t CachingBackend::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t CachingBackend::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::vector<std::string> CachingBackend::RecordedIdentities(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  const auto path = dir / kIdentityFile;
  if (!std::filesystem::exists(path)) return out;
  std::istringstream in(ReadText(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void CachingBackend::RememberIdentity() {
  std::lock_guard lock(mu_);
  const auto known = RecordedIdentities(dir_);
  if (std::find(known.begin(), known.end(), identity_) != known.end()) return;
  std::ofstream out(dir_ / kIdentityFile, std::ios::app);
  out << identity_ << '\n';
  if (!out) throw Error(ErrorCode::kIo, "cannot record identity in " + dir_.string());
}

QueryRecord CachingBackend::Query(const QueryRequest& request) {
  const std::string digest = RequestDigest(*request.image, request.prompt, identity_);
  const auto path = PathFor(digest);
  if (std::filesystem::exists(path)) {
    QueryRecord cached = ParseQueryRecord(ReadText(path));
    if (cached.digest != digest) {
      throw Error(ErrorCode::kSchema, "cache entry " + path.string() + " holds a different digest");
    }
    std::lock_guard lock(mu_);
    ++hits_;
    return cached;
  }
  {
    std::lock_guard lock(mu_);
    ++misses_;
  }
  if (!inner_) {
    throw Error(ErrorCode::kCacheMiss, fmt::format("no cached response for digest {}", digest));
  }
  QueryRecord fresh = inner_->Query(request);
  fresh.digest = digest;

  std::uint64_t serial;
  {
    std::lock_guard lock(mu_);
    serial = temp_counter_++;
  }
  const auto temp = dir_ / fmt::format(".{}.{}.{}.tmp", digest,
                                       std::hash<std::thread::id>{}(std::this_thread::get_id()),
                                       serial);
  const std::string text = SerializeQueryRecord(fresh);
  WriteFileBytes(temp, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorCode::kIo, "cannot move cache entry into " + path.string());
  }
  return fresh;
}

}  // namespace gridloc
