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

#ifndef GRIDLOC_TESTS_SUPPORT_FIXTURE_H_
#define GRIDLOC_TESTS_SUPPORT_FIXTURE_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "gridloc/box.h"
#include "gridloc/image.h"

namespace gridloc::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "gridloc");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

ImageBuffer RandomImage(int width, int height, std::mt19937_64& rng);

// Smooth gradient with a little texture; compresses well and is not flat.
ImageBuffer PatternImage(int width, int height, int variant);

struct FixtureDataset {
  std::filesystem::path annotations;  // COCO instances JSON
  std::filesystem::path image_root;
  int images = 0;
};

// `images` PNGs of 200x200 with one "person" each at corners
// (50, 50, 150, 150), i.e. COCO bbox [50, 50, 100, 100].
FixtureDataset WriteFixtureDataset(const std::filesystem::path& dir, int images);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace gridloc::testing

#endif  // GRIDLOC_TESTS_SUPPORT_FIXTURE_H_
