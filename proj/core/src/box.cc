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

#include "gridloc/box.h"

#include <fmt/format.h>

#include <cmath>

#include "gridloc/error.h"

namespace gridloc {

BBox::BBox(double x1, double y1, double x2, double y2)
    : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {
  if (!std::isfinite(x1) || !std::isfinite(y1) || !std::isfinite(x2) ||
      !std::isfinite(y2)) {
    throw Error(ErrorCode::kInvalidBox, "box coordinates must be finite");
  }
  if (!(x1 < x2) || !(y1 < y2)) {
    throw Error(ErrorCode::kInvalidBox,
                fmt::format("degenerate box [{}, {}, {}, {}]", x1, y1, x2, y2));
  }
}

BBox BBox::Translated(double dx, double dy) const {
  return BBox(x1_ + dx, y1_ + dy, x2_ + dx, y2_ + dy);
}

BBox BBox::Scaled(double s) const { return BBox(x1_ * s, y1_ * s, x2_ * s, y2_ * s); }

std::string BBox::ToString() const {
  return fmt::format("[{}, {}, {}, {}]", x1_, y1_, x2_, y2_);
}

}  // namespace gridloc
