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

#include "gridloc/visualize.h"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "gridloc/error.h"

namespace gridloc {
namespace {

int RoundHalfUp(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// 3x5 bitmaps, one row per entry, high bit on the left. Only the letters of
// the two box tags are needed.
struct Glyph {
  char ch;
  unsigned char rows[5];
};

constexpr Glyph kGlyphs[] = {
    {'G', {0b111, 0b100, 0b101, 0b101, 0b111}}, {'T', {0b111, 0b010, 0b010, 0b010, 0b010}},
    {'P', {0b111, 0b101, 0b111, 0b100, 0b100}}, {'R', {0b111, 0b101, 0b111, 0b110, 0b101}},
    {'E', {0b111, 0b100, 0b111, 0b100, 0b111}}, {'D', {0b110, 0b101, 0b101, 0b101, 0b110}},
};

void FillRect(ImageBuffer& image, int x0, int y0, int x1, int y1, Rgb color) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, image.width());
  y1 = std::min(y1, image.height());
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) image.set(x, y, color);
  }
}

void DrawText(ImageBuffer& image, std::string_view text, int x, int y, int scale, Rgb color) {
  for (char ch : text) {
    const auto* glyph =
        std::find_if(std::begin(kGlyphs), std::end(kGlyphs), [&](const Glyph& g) { return g.ch == ch; });
    if (glyph != std::end(kGlyphs)) {
      for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 3; ++col) {
          if (glyph->rows[row] & (0b100 >> col)) {
            FillRect(image, x + col * scale, y + row * scale, x + (col + 1) * scale,
                     y + (row + 1) * scale, color);
          }
        }
      }
    }
    x += 4 * scale;
  }
}

void DrawTag(ImageBuffer& image, const BBox& box, std::string_view text, Rgb color,
             int stroke_width) {
  const int scale = std::max(1, stroke_width);
  const int x = RoundHalfUp(box.x1());
  int y = RoundHalfUp(box.y1()) - 6 * scale;
  if (y < 0) y = RoundHalfUp(box.y1()) + stroke_width + scale;
  DrawText(image, text, x, y, scale, color);
}

}  // namespace

void AnnotationStyle::Validate() const {
  if (gt_color == prediction_color) {
    throw Error(ErrorCode::kConfig, "ground-truth and prediction colors must differ");
  }
  if (stroke_width < 1) throw Error(ErrorCode::kConfig, "stroke width must be at least 1");
}

int BadgeSize(int stroke_width) { return std::max(8, 4 * stroke_width); }

void StrokeBox(ImageBuffer& image, const BBox& box, Rgb color, int stroke_width) {
  const int x0 = RoundHalfUp(box.x1());
  const int y0 = RoundHalfUp(box.y1());
  const int x1 = RoundHalfUp(box.x2());
  const int y1 = RoundHalfUp(box.y2());
  if (x1 <= x0 || y1 <= y0) return;
  const int w = stroke_width;
  FillRect(image, x0, y0, x1, std::min(y0 + w, y1), color);  // top
  FillRect(image, x0, std::max(y1 - w, y0), x1, y1, color);  // bottom
  FillRect(image, x0, y0, std::min(x0 + w, x1), y1, color);  // left
  FillRect(image, std::max(x1 - w, x0), y0, x1, y1, color);  // right
}

ImageBuffer RenderAnnotated(const ImageBuffer& image, const BBox& gt,
                            const std::optional<BBox>& prediction, const AnnotationStyle& style) {
  style.Validate();
  ImageBuffer out = image;
  StrokeBox(out, gt, style.gt_color, style.stroke_width);
  if (style.labels == LabelPlacement::kAboveBox) {
    DrawTag(out, gt, "GT", style.gt_color, style.stroke_width);
  }
  if (prediction) {
    StrokeBox(out, *prediction, style.prediction_color, style.stroke_width);
    if (style.labels == LabelPlacement::kAboveBox) {
      DrawTag(out, *prediction, "PRED", style.prediction_color, style.stroke_width);
    }
  } else {
    const int badge = BadgeSize(style.stroke_width);
    FillRect(out, 0, 0, badge, badge, style.prediction_color);
  }
  return out;
}

ImageBuffer SideBySide(const ImageBuffer& left, const ImageBuffer& right, int gutter) {
  if (gutter < 0) throw Error(ErrorCode::kConfig, "gutter must be non-negative");
  const int height = std::max(left.height(), right.height());
  ImageBuffer out(left.width() + gutter + right.width(), height, kPanelGray);
  for (int y = 0; y < left.height(); ++y) {
    for (int x = 0; x < left.width(); ++x) out.set(x, y, left.at(x, y));
  }
  const int offset = left.width() + gutter;
  for (int y = 0; y < right.height(); ++y) {
    for (int x = 0; x < right.width(); ++x) out.set(offset + x, y, right.at(x, y));
  }
  return out;
}

}  // namespace gridloc
