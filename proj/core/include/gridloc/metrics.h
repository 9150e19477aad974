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

#ifndef GRIDLOC_METRICS_H_
#define GRIDLOC_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>

#include "gridloc/box.h"

namespace gridloc {

// Area convention is continuous, (x2 - x1) * (y2 - y1); no +1 pixel terms.
double IntersectionArea(const BBox& a, const BBox& b);
double UnionArea(const BBox& a, const BBox& b);

// Smallest axis-aligned box containing both inputs.
BBox EnclosingBox(const BBox& a, const BBox& b);

double Iou(const BBox& a, const BBox& b);

// IoU minus the fraction of the enclosing box left uncovered by the union.
double Giou(const BBox& a, const BBox& b);

struct MetricPair {
  double iou = 0.0;
  double giou = 0.0;
};

MetricPair Score(const BBox& predicted, const BBox& ground_truth);

// How failed trials enter the means. Lenient drops them; strict scores each
// one as iou = 0, giou = -1.
enum class FailurePolicy { kLenient, kStrict };

inline constexpr MetricPair kStrictFailureScore{0.0, -1.0};

// One trial outcome: a metric pair, or nullopt when no box was obtained.
using TrialOutcome = std::optional<MetricPair>;

struct AggregateSummary {
  // nullopt when no trial contributed to the mean.
  std::optional<double> mean_iou;
  std::optional<double> mean_giou;
  std::size_t n_scored = 0;
  std::size_t n_failed = 0;

  std::size_t total() const { return n_scored + n_failed; }
};

AggregateSummary Aggregate(std::span<const TrialOutcome> outcomes,
                           FailurePolicy policy = FailurePolicy::kLenient);

}  // namespace gridloc

#endif  // GRIDLOC_METRICS_H_
