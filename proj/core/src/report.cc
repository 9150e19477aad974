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

#include "gridloc/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "gridloc/error.h"

namespace gridloc {
namespace {

// Terminal columns taken by a UTF-8 string, counting code points.
std::size_t DisplayWidth(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string PadRight(const std::string& s, std::size_t width) {
  const std::size_t w = DisplayWidth(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string PadLeft(const std::string& s, std::size_t width) {
  const std::size_t w = DisplayWidth(s);
  return w >= width ? s : std::string(width - w, ' ') + s;
}

std::string Mean2(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}", *v) : "n/a";
}

std::string Mean6(const std::optional<double>& v) {
  return v ? fmt::format("{:.6f}", *v) : "";
}

bool HasNoReferenceResult(const SweepConfig& c) {
  return c.grid && c.grid->cells == 30 && c.grid->color == kWhite && c.grid->alpha == 1.0;
}

}  // namespace

ImprovementStat RelativeChange(double baseline, double treated) {
  // A negative baseline flips the sign of the ratio, so only positive
  // baselines give a meaningful relative change.
  if (!std::isfinite(baseline) || !std::isfinite(treated) || baseline <= 0.0) {
    throw Error(ErrorCode::kUndefined,
                fmt::format("relative change from baseline {} is undefined", baseline));
  }
  return {baseline, treated, (treated - baseline) / baseline * 100.0};
}

Improvement ComputeImprovement(const AggregateSummary& baseline,
                               const AggregateSummary& treated) {
  if (!baseline.mean_iou || !baseline.mean_giou) {
    throw Error(ErrorCode::kUndefined, "baseline means are undefined");
  }
  if (!treated.mean_iou || !treated.mean_giou) {
    throw Error(ErrorCode::kUndefined, "treated means are undefined");
  }
  return {RelativeChange(*baseline.mean_iou, *treated.mean_iou),
          RelativeChange(*baseline.mean_giou, *treated.mean_giou)};
}

std::optional<std::size_t> BestGridRow(const SweepReport& report) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (row.config.is_baseline() || !row.summary.mean_iou) continue;
    if (!best || *row.summary.mean_iou > *report.rows[*best].summary.mean_iou) best = i;
  }
  return best;
}

std::string RenderCsv(const SweepReport& report) {
  std::string out = "size,color,alpha,mean_iou,mean_giou,n_scored,n_failed\n";
  for (const auto& row : report.rows) {
    if (row.config.is_baseline()) {
      out += ",,,";
    } else {
      const GridConfig& g = *row.config.grid;
      out += fmt::format("{},{},{},", g.cells, ColorName(g.color), FormatAlpha(g.alpha));
    }
    out += fmt::format("{},{},{},{}\n", Mean6(row.summary.mean_iou), Mean6(row.summary.mean_giou),
                       row.summary.n_scored, row.summary.n_failed);
  }
  return out;
}

std::string RenderTable(const SweepReport& report) {
  struct Line {
    std::string label, iou, giou, scored, failed;
  };
  std::vector<Line> lines;
  lines.push_back({"Configuration", "IoU", "GIoU", "Scored", "Failed"});
  bool has_baseline = false;
  bool has_omitted_cell = false;
  for (const auto& row : report.rows) {
    has_baseline |= row.config.is_baseline();
    has_omitted_cell |= HasNoReferenceResult(row.config);
    lines.push_back({ConfigLabel(row.config), Mean2(row.summary.mean_iou),
                     Mean2(row.summary.mean_giou), std::to_string(row.summary.n_scored),
                     std::to_string(row.summary.n_failed)});
  }
  std::size_t w[5] = {0, 0, 0, 0, 0};
  for (const auto& l : lines) {
    w[0] = std::max(w[0], DisplayWidth(l.label));
    w[1] = std::max(w[1], DisplayWidth(l.iou));
    w[2] = std::max(w[2], DisplayWidth(l.giou));
    w[3] = std::max(w[3], DisplayWidth(l.scored));
    w[4] = std::max(w[4], DisplayWidth(l.failed));
  }
  const std::size_t total = w[0] + w[1] + w[2] + w[3] + w[4] + 8;
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    out += PadRight(l.label, w[0]) + "  " + PadLeft(l.iou, w[1]) + "  " + PadLeft(l.giou, w[2]) +
           "  " + PadLeft(l.scored, w[3]) + "  " + PadLeft(l.failed, w[4]) + "\n";
    if (i == 0) out += std::string(total, '-') + "\n";
  }
  out += std::string(total, '-') + "\n";
  out += fmt::format("failure policy: {}\n", FailurePolicyName(report.policy));

  if (has_baseline) {
    const auto best = BestGridRow(report);
    const auto& base = std::find_if(report.rows.begin(), report.rows.end(), [](const auto& r) {
                         return r.config.is_baseline();
                       })->summary;
    if (best) {
      const auto& row = report.rows[*best];
      out += fmt::format("best grid configuration: {}\n", ConfigLabel(row.config));
      const auto line = [&](std::string_view name, const std::optional<double>& b,
                            const std::optional<double>& t) {
        if (!b || !t || !(*b > 0.0)) {
          out += fmt::format("{} improvement over baseline: undefined (baseline mean {})\n", name,
                             b ? fmt::format("{:.2f} is not positive", *b) : "is missing");
          return;
        }
        const ImprovementStat s = RelativeChange(*b, *t);
        out += fmt::format("{} improvement over baseline: {:+.1f}% (from {:.2f} to {:.2f})\n", name,
                           s.relative_change_pct, s.baseline, s.treated);
      };
      line("IoU", base.mean_iou, row.summary.mean_iou);
      line("GIoU", base.mean_giou, row.summary.mean_giou);
    }
  }
  if (has_omitted_cell) {
    out += "note: no reference result exists for 30×30 - white - 1.0; the row is reported for "
           "completeness.\n";
  }
  return out;
}

}  // namespace gridloc
