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

#include "gridloc/image.h"

#include <string>
#include <utility>

#include "gridloc/error.h"

namespace gridloc {
namespace {

void CheckDims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kConfig, "image dimensions must be positive, got " +
                                        std::to_string(width) + "x" +
                                        std::to_string(height));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  CheckDims(width, height);
  data_.resize(pixel_count() * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), data_(std::move(rgb)) {
  CheckDims(width, height);
  if (data_.size() != pixel_count() * 3) {
    throw Error(ErrorCode::kConfig,
                "pixel array holds " + std::to_string(data_.size()) +
                    " bytes, expected " + std::to_string(pixel_count() * 3));
  }
}

Rgb ImageBuffer::at(int x, int y) const {
  const std::size_t i = offset(x, y);
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void ImageBuffer::set(int x, int y, Rgb color) {
  const std::size_t i = offset(x, y);
  data_[i] = color.r;
  data_[i + 1] = color.g;
  data_[i + 2] = color.b;
}

}  // namespace gridloc
