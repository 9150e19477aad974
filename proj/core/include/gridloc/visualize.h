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

#ifndef GRIDLOC_VISUALIZE_H_
#define GRIDLOC_VISUALIZE_H_

#include <optional>

#include "gridloc/box.h"
#include "gridloc/image.h"

namespace gridloc {

enum class LabelPlacement {
  kNone,
  // "GT" / "PRED" tags just above each box's top-left corner (inside the
  // box when there is no room above).
  kAboveBox,
};

struct AnnotationStyle {
  Rgb gt_color{0, 200, 0};
  Rgb prediction_color{230, 0, 0};
  int stroke_width = 1;
  LabelPlacement labels = LabelPlacement::kNone;

  // Throws Error(kConfig) if the colors coincide or stroke_width < 1.
  void Validate() const;
};

inline constexpr Rgb kPanelGray{128, 128, 128};

// Strokes gt, then the prediction, on a copy of `image`. Corners are rounded
// half-up to integers and a box covers pixels [x1, x2) x [y1, y2); the
// stroke is the inner band of `stroke_width` pixels of that region, clipped
// to the image. A missing prediction draws a filled badge in the prediction
// color at the image's top-left corner instead.
ImageBuffer RenderAnnotated(const ImageBuffer& image, const BBox& gt,
                            const std::optional<BBox>& prediction,
                            const AnnotationStyle& style = {});

// Side length of the missing-prediction badge for a given stroke width.
int BadgeSize(int stroke_width);

// Strokes a single box; used by RenderAnnotated.
void StrokeBox(ImageBuffer& image, const BBox& box, Rgb color, int stroke_width);

// `left`, a gutter of `gutter` gray columns, then `right`. The shorter image
// is padded with gray at the bottom.
ImageBuffer SideBySide(const ImageBuffer& left, const ImageBuffer& right, int gutter = 8);

}  // namespace gridloc

#endif  // GRIDLOC_VISUALIZE_H_
