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

#include "fixture.h"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gridloc/image_io.h"

namespace gridloc::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& prefix) {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const fs::path candidate =
        fs::temp_directory_path() / fmt::format("{}-{:016x}", prefix, (std::uint64_t{rd()} << 32) | rd());
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ImageBuffer RandomImage(int width, int height, std::mt19937_64& rng) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(width) * height * 3);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(byte(rng));
  return ImageBuffer(width, height, std::move(bytes));
}

ImageBuffer PatternImage(int width, int height, int variant) {
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.set(x, y,
              Rgb{static_cast<std::uint8_t>((x * 255) / std::max(1, width - 1)),
                  static_cast<std::uint8_t>((y * 255) / std::max(1, height - 1)),
                  static_cast<std::uint8_t>((x * 7 + y * 13 + variant * 37) % 256)});
    }
  }
  return img;
}

FixtureDataset WriteFixtureDataset(const fs::path& dir, int images) {
  FixtureDataset out;
  out.image_root = dir / "images";
  out.annotations = dir / "instances.json";
  out.images = images;
  fs::create_directories(out.image_root);

  std::string image_list;
  std::string annotation_list;
  for (int i = 0; i < images; ++i) {
    const int id = 100 + i;
    const std::string name = fmt::format("{:012d}.png", id);
    WriteImage(out.image_root / name, PatternImage(200, 200, i));
    image_list += fmt::format(R"({}{{"id": {}, "file_name": "{}", "width": 200, "height": 200}})",
                              i == 0 ? "" : ", ", id, name);
    annotation_list += fmt::format(
        R"({}{{"id": {}, "image_id": {}, "category_id": 1, "bbox": [50, 50, 100, 100], "area": 10000}})",
        i == 0 ? "" : ", ", 1000 + i, id);
  }
  WriteTextFile(out.annotations,
                fmt::format(R"({{"images": [{}], "annotations": [{}], "categories": [{{"id": 1, "name": "person"}}]}})",
                            image_list, annotation_list));
  return out;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace gridloc::testing
