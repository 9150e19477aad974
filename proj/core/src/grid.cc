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

#include "gridloc/grid.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "gridloc/error.h"

namespace gridloc {
namespace {

// Absorbs representation error in products like 0.7 * 200 so that values
// which are mathematically exact halves still round up.
constexpr double kRoundingSlack = 1e-9;

}  // namespace

void GridConfig::Validate() const {
  if (cells < 2) {
    throw Error(ErrorCode::kConfig,
                "grid needs at least 2 cells per axis, got " + std::to_string(cells));
  }
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw Error(ErrorCode::kConfig, "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (line_width < 1) {
    throw Error(ErrorCode::kConfig,
                "line width must be at least 1, got " + std::to_string(line_width));
  }
}

GridMask::GridMask(int width, int height)
    : width_(width),
      height_(height),
      covered_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kConfig, "mask dimensions must be positive");
  }
}

std::size_t GridMask::covered_count() const {
  return static_cast<std::size_t>(std::count(covered_.begin(), covered_.end(), 1));
}

std::vector<int> LinePositions(int extent, int cells) {
  if (cells < 2) {
    throw Error(ErrorCode::kConfig,
                "grid needs at least 2 cells per axis, got " + std::to_string(cells));
  }
  if (extent < cells) {
    throw Error(ErrorCode::kConfig, "extent " + std::to_string(extent) +
                                        " px is smaller than " + std::to_string(cells) +
                                        " cells; lines would collide");
  }
  std::vector<int> positions;
  positions.reserve(static_cast<std::size_t>(cells - 1));
  const std::int64_t e = extent;
  const std::int64_t n = cells;
  for (std::int64_t k = 1; k < n; ++k) {
    // floor(k * e / n + 1/2) in exact integer arithmetic.
    positions.push_back(static_cast<int>((2 * k * e + n) / (2 * n)));
  }
  return positions;
}

GridMask RenderGridMask(int width, int height, const GridConfig& config) {
  config.Validate();
  const auto columns = LinePositions(width, config.cells);
  const auto rows = LinePositions(height, config.cells);
  GridMask mask(width, height);
  for (int p : columns) {
    const int end = std::min(width, p + config.line_width);
    for (int y = 0; y < height; ++y) {
      for (int x = p; x < end; ++x) mask.cover(x, y);
    }
  }
  for (int p : rows) {
    const int end = std::min(height, p + config.line_width);
    for (int y = p; y < end; ++y) {
      for (int x = 0; x < width; ++x) mask.cover(x, y);
    }
  }
  return mask;
}

std::uint8_t BlendChannel(std::uint8_t input, std::uint8_t grid, double alpha) {
  const double blended = alpha * grid + (1.0 - alpha) * input;
  const double rounded = std::floor(blended + 0.5 + kRoundingSlack);
  return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

ImageBuffer Composite(const ImageBuffer& image, const GridConfig& config) {
  const GridMask mask = RenderGridMask(image.width(), image.height(), config);
  ImageBuffer out = image;
  // Only 256 possible inputs per channel, so blend through lookup tables.
  std::uint8_t lut[3][256];
  const std::uint8_t grid[3] = {config.color.r, config.color.g, config.color.b};
  for (int c = 0; c < 3; ++c) {
    for (int v = 0; v < 256; ++v) {
      lut[c][v] = BlendChannel(static_cast<std::uint8_t>(v), grid[c], config.alpha);
    }
  }
  auto bytes = out.mutable_bytes();
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!mask.covered(x, y)) continue;
      const std::size_t i =
          (static_cast<std::size_t>(y) * static_cast<std::size_t>(image.width()) +
           static_cast<std::size_t>(x)) *
          3;
      bytes[i] = lut[0][bytes[i]];
      bytes[i + 1] = lut[1][bytes[i + 1]];
      bytes[i + 2] = lut[2][bytes[i + 2]];
    }
  }
  return out;
}

}  // namespace gridloc
