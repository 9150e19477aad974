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

#ifndef GRIDLOC_DIGEST_H_
#define GRIDLOC_DIGEST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace gridloc {

// Incremental SHA-256, hex-encoded on Finish().
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& Update(std::span<const std::uint8_t> bytes);
  Sha256& Update(std::string_view text);
  std::string FinishHex();

 private:
  void* ctx_;
};

std::string Sha256Hex(std::span<const std::uint8_t> bytes);
std::string Sha256Hex(std::string_view text);

std::string Base64Encode(std::span<const std::uint8_t> bytes);

}  // namespace gridloc

#endif  // GRIDLOC_DIGEST_H_
