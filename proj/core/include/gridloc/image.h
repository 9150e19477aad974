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

#ifndef GRIDLOC_IMAGE_H_
#define GRIDLOC_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gridloc {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

// 8-bit RGB raster, row-major, three interleaved channels per pixel.
// The constructor enforces width, height > 0 and a pixel array of exactly
// width * height * 3 bytes, so a constructed ImageBuffer is always valid.
class ImageBuffer {
 public:
  ImageBuffer(int width, int height, Rgb fill = kBlack);
  ImageBuffer(int width, int height, std::vector<std::uint8_t> rgb);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb color);

  std::span<const std::uint8_t> bytes() const { return data_; }
  std::span<std::uint8_t> mutable_bytes() { return data_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           3;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

}  // namespace gridloc

#endif  // GRIDLOC_IMAGE_H_
