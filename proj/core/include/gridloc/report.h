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

#ifndef GRIDLOC_REPORT_H_
#define GRIDLOC_REPORT_H_

#include <optional>
#include <string>
#include <utility>

#include "gridloc/metrics.h"
#include "gridloc/sweep.h"

namespace gridloc {

struct ImprovementStat {
  double baseline = 0.0;
  double treated = 0.0;
  double relative_change_pct = 0.0;
};

// (treated - baseline) / baseline * 100. Throws Error(kUndefined) unless the
// baseline is positive and both values are finite.
ImprovementStat RelativeChange(double baseline, double treated);

struct Improvement {
  ImprovementStat iou;
  ImprovementStat giou;
};

// Throws Error(kUndefined) if either baseline mean is undefined or not
// positive, or a treated mean is undefined.
Improvement ComputeImprovement(const AggregateSummary& baseline,
                               const AggregateSummary& treated);

// Row with the highest mean IoU among grid rows (first wins ties), if any
// grid row has a defined mean.
std::optional<std::size_t> BestGridRow(const SweepReport& report);

// Columns: size,color,alpha,mean_iou,mean_giou,n_scored,n_failed. The
// baseline row leaves size, color and alpha empty; undefined means are
// empty fields. Means carry six decimals.
std::string RenderCsv(const SweepReport& report);

// Aligned table with "size - color - alpha" labels ("9×9 - black - 0.3"), means at
// two decimals, followed by a footer: failure policy, best-vs-baseline
// improvement when a baseline row exists, and a note when the sweep holds
// the 30×30 - white - 1.0 cell, which has no reference result.
std::string RenderTable(const SweepReport& report);

}  // namespace gridloc

#endif  // GRIDLOC_REPORT_H_
