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

#ifndef GRIDLOC_GRID_H_
#define GRIDLOC_GRID_H_

#include <cstddef>
#include <vector>

#include "gridloc/image.h"

namespace gridloc {

// One point in the grid configuration space. `cells` counts cells per axis,
// so an N-cell grid draws N-1 interior lines per axis and no border lines.
// `alpha` is the weight of the grid color in the blend: 0 leaves the image
// untouched, 1 paints the lines opaquely.
struct GridConfig {
  int cells = 9;
  Rgb color = kBlack;
  double alpha = 0.3;
  int line_width = 1;

  // Throws Error(kConfig) if cells < 2, alpha is outside [0, 1] or not
  // finite, or line_width < 1.
  void Validate() const;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

// Per-pixel coverage of the grid pattern.
class GridMask {
 public:
  GridMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool covered(int x, int y) const {
    return covered_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void cover(int x, int y) { covered_[static_cast<std::size_t>(y) * width_ + x] = 1; }
  std::size_t covered_count() const;

 private:
  int width_;
  int height_;
  std::vector<unsigned char> covered_;
};

// Start offsets of the cells-1 interior lines along an axis of `extent`
// pixels: round_half_up(k * extent / cells) for k = 1 .. cells-1. Throws
// Error(kConfig) when cells < 2 or extent < cells.
std::vector<int> LinePositions(int extent, int cells);

// A pixel is covered when its column lies in [p, p + line_width) for a
// vertical line position p, or its row does so for a horizontal one. Lines
// wider than the remaining extent are clipped at the image edge.
GridMask RenderGridMask(int width, int height, const GridConfig& config);

// I_out = alpha * grid_color + (1 - alpha) * I on covered pixels, computed on
// the stored 8-bit values and rounded half-up; uncovered pixels are copied
// verbatim.
ImageBuffer Composite(const ImageBuffer& image, const GridConfig& config);

// Blends a single channel value. Exposed for tests and benchmarks.
std::uint8_t BlendChannel(std::uint8_t input, std::uint8_t grid, double alpha);

}  // namespace gridloc

#endif  // GRIDLOC_GRID_H_
