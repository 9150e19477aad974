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

#include "gridloc/metrics.h"

#include <algorithm>

namespace gridloc {

double IntersectionArea(const BBox& a, const BBox& b) {
  const double w = std::min(a.x2(), b.x2()) - std::max(a.x1(), b.x1());
  const double h = std::min(a.y2(), b.y2()) - std::max(a.y1(), b.y1());
  return std::max(0.0, w) * std::max(0.0, h);
}

double UnionArea(const BBox& a, const BBox& b) {
  return a.area() + b.area() - IntersectionArea(a, b);
}

BBox EnclosingBox(const BBox& a, const BBox& b) {
  return BBox(std::min(a.x1(), b.x1()), std::min(a.y1(), b.y1()),
              std::max(a.x2(), b.x2()), std::max(a.y2(), b.y2()));
}

double Iou(const BBox& a, const BBox& b) { return Score(a, b).iou; }

double Giou(const BBox& a, const BBox& b) { return Score(a, b).giou; }

MetricPair Score(const BBox& predicted, const BBox& ground_truth) {
  const double inter = IntersectionArea(predicted, ground_truth);
  const double uni = predicted.area() + ground_truth.area() - inter;
  const double enclosing = EnclosingBox(predicted, ground_truth).area();
  const double iou = inter / uni;
  return {iou, iou - (enclosing - uni) / enclosing};
}

AggregateSummary Aggregate(std::span<const TrialOutcome> outcomes, FailurePolicy policy) {
  AggregateSummary summary;
  double iou_sum = 0.0;
  double giou_sum = 0.0;
  for (const auto& outcome : outcomes) {
    if (outcome) {
      ++summary.n_scored;
      iou_sum += outcome->iou;
      giou_sum += outcome->giou;
    } else {
      ++summary.n_failed;
      if (policy == FailurePolicy::kStrict) {
        iou_sum += kStrictFailureScore.iou;
        giou_sum += kStrictFailureScore.giou;
      }
    }
  }
  const std::size_t denominator =
      policy == FailurePolicy::kStrict ? summary.total() : summary.n_scored;
  if (denominator > 0) {
    summary.mean_iou = iou_sum / static_cast<double>(denominator);
    summary.mean_giou = giou_sum / static_cast<double>(denominator);
  }
  return summary;
}

}  // namespace gridloc
