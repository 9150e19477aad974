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

#ifndef GRIDLOC_BOX_H_
#define GRIDLOC_BOX_H_

#include <string>

namespace gridloc {

// Axis-aligned box in continuous pixel coordinates, corner convention.
// Construction rejects non-finite coordinates and boxes with x1 >= x2 or
// y1 >= y2 (Error(kInvalidBox)), so every BBox has positive area.
class BBox {
 public:
  BBox(double x1, double y1, double x2, double y2);

  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double x2() const { return x2_; }
  double y2() const { return y2_; }
  double width() const { return x2_ - x1_; }
  double height() const { return y2_ - y1_; }
  double area() const { return width() * height(); }

  BBox Translated(double dx, double dy) const;
  BBox Scaled(double s) const;

  // "[x1, y1, x2, y2]" with shortest round-trip number formatting.
  std::string ToString() const;

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  double x1_;
  double y1_;
  double x2_;
  double y2_;
};

}  // namespace gridloc

#endif  // GRIDLOC_BOX_H_
