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

// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failed checks.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "fixture.h"
#include "gridloc/dataset.h"
#include "gridloc/grid.h"
#include "gridloc/metrics.h"
#include "gridloc/parser.h"
#include "gridloc/report.h"
#include "gridloc/sweep.h"
#include "oracles.h"

namespace gridloc::acceptance {
namespace {

namespace fs = std::filesystem;
using testing::ReadTextFile;
using testing::TempDir;

// Collects the first few mismatches of a check.
class Findings {
 public:
  void Fail(std::string what) {
    ++count_;
    if (messages_.size() < 5) messages_.push_back(std::move(what));
  }
  bool ok() const { return count_ == 0; }
  std::string Summary() const {
    std::string out = fmt::format("{} mismatch(es)", count_);
    for (const auto& m : messages_) out += "; " + m;
    return out;
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> messages_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Done(const Findings& f, std::string ok_detail) {
  return f.ok() ? Outcome{true, std::move(ok_detail)} : Outcome{false, f.Summary()};
}

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1 -------------------------------------------------------------------------

Outcome CompositingExactness() {
  Findings f;
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> dim(20, 160);
  std::uniform_int_distribution<int> pick_cells(0, 5);
  std::uniform_int_distribution<int> pick_width(1, 3);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int cells[] = {2, 3, 5, 7, 9, 20};
  std::size_t covered_pixels = 0;
  for (int n = 0; n < 100; ++n) {
    const ImageBuffer img = testing::RandomImage(dim(rng), dim(rng), rng);
    GridConfig cfg;
    cfg.cells = cells[pick_cells(rng)];
    cfg.line_width = pick_width(rng);
    cfg.color = n % 3 == 0 ? kBlack
                : n % 3 == 1 ? kWhite
                             : Rgb{static_cast<std::uint8_t>(byte(rng)),
                                   static_cast<std::uint8_t>(byte(rng)),
                                   static_cast<std::uint8_t>(byte(rng))};
    cfg.alpha = unit(rng);
    if (std::min(img.width(), img.height()) < cfg.cells) cfg.cells = 2;

    const auto covered = [&](int x, int y) {
      return testing::OracleCovered(x, y, img.width(), img.height(), cfg.cells, cfg.line_width);
    };
    for (double alpha : {0.0, 1.0, cfg.alpha}) {
      GridConfig c = cfg;
      c.alpha = alpha;
      const ImageBuffer out = Composite(img, c);
      for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
          const Rgb in = img.at(x, y);
          const Rgb got = out.at(x, y);
          if (alpha == 0.0 || !covered(x, y)) {
            if (!(got == in)) f.Fail(fmt::format("image {} pixel ({},{}) changed at alpha {}", n, x, y, alpha));
            continue;
          }
          covered_pixels += alpha == cfg.alpha;
          const Rgb want = alpha == 1.0 ? c.color
                                        : Rgb{static_cast<std::uint8_t>(testing::OracleBlend(in.r, c.color.r, alpha)),
                                              static_cast<std::uint8_t>(testing::OracleBlend(in.g, c.color.g, alpha)),
                                              static_cast<std::uint8_t>(testing::OracleBlend(in.b, c.color.b, alpha))};
          if (!(got == want)) {
            f.Fail(fmt::format("image {} pixel ({},{}) alpha {}: got ({},{},{}) want ({},{},{})", n, x,
                               y, alpha, got.r, got.g, got.b, want.r, want.g, want.b));
          }
        }
      }
    }
  }
  // Worked values on a single pixel under a one-pixel grid line.
  const auto blended = [](Rgb grid, double alpha, std::uint8_t value) {
    ImageBuffer img(2, 2, Rgb{value, value, value});
    return Composite(img, GridConfig{2, grid, alpha, 1}).at(1, 1).r;
  };
  if (blended(kBlack, 0.3, 200) != 140) f.Fail("black, alpha 0.3, input 200 is not 140");
  if (blended(kWhite, 0.5, 100) != 178) f.Fail("white, alpha 0.5, input 100 is not 178");
  return Done(f, fmt::format("100 images, {} covered pixels checked; 140 and 178 hold",
                             covered_pixels));
}

// 2 -------------------------------------------------------------------------

Outcome LineGeometry() {
  Findings f;
  const std::vector<int> want{71, 142, 213, 284, 356, 427, 498, 569};
  if (LinePositions(640, 9) != want) f.Fail("line positions for 640 / 9 cells differ");
  const GridConfig cfg{9, kBlack, 0.3, 1};
  const GridMask mask = RenderGridMask(640, 480, cfg);
  const std::size_t inclusion_exclusion = 8 * 480 + 8 * 640 - 8 * 8;
  std::size_t brute = 0;
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x) brute += testing::OracleCovered(x, y, 640, 480, 9, 1);
  if (inclusion_exclusion != 8896) f.Fail("inclusion-exclusion count is not 8896");
  if (brute != 8896) f.Fail(fmt::format("brute-force count {} != 8896", brute));
  if (mask.covered_count() != 8896) f.Fail(fmt::format("mask count {} != 8896", mask.covered_count()));
  return Done(f, "positions [71..569]; 8896 covered pixels by mask, count and enumeration");
}

// 3 -------------------------------------------------------------------------

Outcome MetricOracle() {
  Findings f;
  constexpr int kCanvas = 64;
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<int> coord(0, kCanvas);
  std::uniform_real_distribution<double> shift(-500.0, 500.0);
  std::uniform_real_distribution<double> scale(0.05, 40.0);
  const auto random_box = [&] {
    int x1, x2, y1, y2;
    do {
      x1 = coord(rng);
      x2 = coord(rng);
    } while (x1 == x2);
    do {
      y1 = coord(rng);
      y2 = coord(rng);
    } while (y1 == y2);
    return testing::PixelBox{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
  };
  constexpr int kPairs = 2000;
  for (int i = 0; i < kPairs; ++i) {
    const auto pa = random_box(), pb = random_box();
    const BBox a(pa.x1, pa.y1, pa.x2, pa.y2), b(pb.x1, pb.y1, pb.x2, pb.y2);
    const MetricPair want = testing::PixelOracle(pa, pb, kCanvas);
    const double iou = Iou(a, b), giou = Giou(a, b);
    if (!Near(iou, want.iou, 1e-9) || !Near(giou, want.giou, 1e-9)) {
      f.Fail(fmt::format("pair {}: ({}, {}) vs oracle ({}, {})", i, iou, giou, want.iou, want.giou));
    }
    if (iou != Iou(b, a) || giou != Giou(b, a)) f.Fail(fmt::format("pair {} not symmetric", i));
    if (iou < 0.0 || iou > 1.0 || giou <= -1.0 || giou > 1.0) f.Fail(fmt::format("pair {} out of bounds", i));
    if (giou > iou) f.Fail(fmt::format("pair {}: giou > iou", i));
    const double dx = shift(rng), dy = shift(rng), s = scale(rng);
    if (!Near(Iou(a.Translated(dx, dy), b.Translated(dx, dy)), iou, 1e-9) ||
        !Near(Giou(a.Translated(dx, dy), b.Translated(dx, dy)), giou, 1e-9)) {
      f.Fail(fmt::format("pair {} not translation invariant", i));
    }
    if (!Near(Iou(a.Scaled(s), b.Scaled(s)), iou, 1e-9) || !Near(Giou(a.Scaled(s), b.Scaled(s)), giou, 1e-9)) {
      f.Fail(fmt::format("pair {} not scale invariant", i));
    }
  }
  return Done(f, fmt::format("{} pairs match the pixel oracle within 1e-9; properties hold", kPairs));
}

// 4 -------------------------------------------------------------------------

Outcome WorkedMetrics() {
  Findings f;
  const BBox a(0, 0, 10, 10), b(5, 5, 15, 15);
  // intersection 5*5 = 25; union 100 + 100 - 25 = 175; enclosing 15*15 = 225
  const double iou = 25.0 / 175.0;
  const double giou = iou - (225.0 - 175.0) / 225.0;
  if (!Near(Iou(a, b), 1.0 / 7.0, 1e-9) || !Near(Iou(a, b), iou, 1e-12)) f.Fail(fmt::format("IoU {}", Iou(a, b)));
  if (!Near(Giou(a, b), 1.0 / 7.0 - 2.0 / 9.0, 1e-9) || !Near(Giou(a, b), giou, 1e-12)) {
    f.Fail(fmt::format("GIoU {}", Giou(a, b)));
  }
  return Done(f, fmt::format("IoU = {:.9f}, GIoU = {:.9f}", Iou(a, b), Giou(a, b)));
}

// 5 -------------------------------------------------------------------------

Outcome ParserRobustness() {
  Findings f;
  const auto corpus = testing::ParserCorpus();
  if (corpus.size() < 30) f.Fail("corpus has fewer than 30 cases");
  for (const auto& c : corpus) {
    const auto got = ParsePrediction(c.text, testing::kCorpusWidth, testing::kCorpusHeight,
                                     ParserOptions{c.extended});
    const std::string problem = testing::CheckParserCase(c, got);
    if (!problem.empty()) f.Fail(fmt::format("{}: {}", c.name, problem));
  }
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> len(0, 256);
  std::uniform_int_distribution<int> byte(0, 255);
  std::size_t parsed = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s(static_cast<std::size_t>(len(rng)), '\0');
    for (auto& ch : s) ch = static_cast<char>(byte(rng));
    const auto got = ParsePrediction(s, 640, 480, ParserOptions{i % 2 == 1});
    if (const auto* p = std::get_if<ParsedPrediction>(&got)) {
      ++parsed;
      if (p->box.x1() < 0 || p->box.y1() < 0 || p->box.x2() > 640 || p->box.y2() > 480) {
        f.Fail(fmt::format("fuzz input {} produced a box outside the image", i));
      }
    }
  }
  // Raw bytes almost never form a tuple, so also splice together tuple-shaped
  // tokens to drive normalization and clamping.
  static const char* const kPieces[] = {
      "[", "]", "(", ")", ",", " ", "x1=", "y1:", "x2 =", "y2=", "-", "0", "1", "0.5", "12",
      "640", "1e3", "1e999", "-7.25", ".", "e", "box", "\n", "nan", "0.999", "480.0"};
  std::uniform_int_distribution<std::size_t> piece(0, std::size(kPieces) - 1);
  std::uniform_int_distribution<int> count(1, 40);
  std::size_t structured_parsed = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    for (int k = count(rng); k > 0; --k) s += kPieces[piece(rng)];
    if (i % 3 != 0) {
      static const char* const kNumbers[] = {"0", "1", "0.5", "12", "640", "-7.25", "1e3",
                                             "0.999", "480.0", "300", "1e999", "0.25"};
      std::uniform_int_distribution<std::size_t> num(0, std::size(kNumbers) - 1);
      s += i % 2 == 0 ? "[" : "(";
      for (int k = 0; k < 4; ++k) s += std::string(k ? ", " : "") + kNumbers[num(rng)];
      s += i % 2 == 0 ? "]" : ")";
      for (int k = count(rng) / 8; k > 0; --k) s += kPieces[piece(rng)];
    }
    const auto got = ParsePrediction(s, 640, 480, ParserOptions{i % 2 == 1});
    if (const auto* p = std::get_if<ParsedPrediction>(&got)) {
      ++structured_parsed;
      const BBox& b = p->box;
      if (!(b.x1() >= 0 && b.y1() >= 0 && b.x2() <= 640 && b.y2() <= 480 && b.x1() < b.x2() &&
            b.y1() < b.y2())) {
        f.Fail(fmt::format("structured input \"{}\" produced an invalid box", s));
      }
    }
  }
  if (structured_parsed == 0) f.Fail("no structured fuzz input parsed; generator is not reaching normalization");
  return Done(f, fmt::format("{} corpus cases; 20000 random inputs without a crash "
                             "({} byte strings and {} token strings parsed)",
                             corpus.size(), parsed, structured_parsed));
}

// 6, 7, 10 share a 10-image fixture ------------------------------------------

struct Fixture {
  TempDir dir{"gridloc-acceptance"};
  testing::FixtureDataset data;
  EvalSubset subset;
  Fixture() {
    data = testing::WriteFixtureDataset(dir.path(), 10);
    subset = SampleSubset(LoadAnnotations(data.annotations), 10, 0);
  }
};

Outcome EchoClosure(const Fixture& fx) {
  Findings f;
  MockEchoBackend echo;
  const SweepResult r = RunSweep(SweepSpec::Standard(), fx.subset, echo, {fx.data.image_root, std::nullopt});
  if (r.report.rows.size() != 61) f.Fail(fmt::format("{} rows, want 61", r.report.rows.size()));
  for (const auto& row : r.report.rows) {
    const auto& s = row.summary;
    if (!s.mean_iou || !Near(*s.mean_iou, 1.0, 1e-9) || !s.mean_giou || !Near(*s.mean_giou, 1.0, 1e-9) ||
        s.n_scored != 10) {
      f.Fail(fmt::format("row {} is not perfect", ConfigLabel(row.config)));
    }
  }
  return Done(f, fmt::format("61 rows x 10 images, every mean IoU and GIoU is 1.0 ({} trials)",
                             r.log.records.size()));
}

Outcome PerturbCheck(const Fixture& fx) {
  Findings f;
  MockPerturbBackend perturb(PerturbOptions{{10, 10, 10, 10}});
  const SweepResult r = RunSweep(SweepSpec::Standard(), fx.subset, perturb, {fx.data.image_root, std::nullopt});
  const double want = 8100.0 / 11900.0;
  for (const auto& rec : r.log.records) {
    const BBox gt = rec.ground_truth_box();
    if (gt.x1() != 50 || gt.y1() != 50 || gt.x2() != 150 || gt.y2() != 150) f.Fail("fixture GT moved");
    if (!rec.metrics) {
      f.Fail(fmt::format("trial {}/{} not scored", rec.config_index, rec.annotation_id));
      continue;
    }
    if (!Near(rec.metrics->iou, want, 1e-9)) f.Fail(fmt::format("IoU {}", rec.metrics->iou));
    if (!Near(rec.metrics->iou, Iou(BBox(60, 60, 160, 160), gt), 1e-12)) f.Fail("differs from direct metric");
  }
  return Done(f, fmt::format("{} trials at IoU = 8100/11900 = {:.9f}", r.log.records.size(), want));
}

// 8 -------------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gridloc");
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

Outcome DeterminismAndResume(const Fixture& fx) {
  Findings f;
  const fs::path cache = fx.dir.path() / "cache";
  const auto sweep = [&](const std::string& out, std::vector<std::string> extra) {
    std::vector<std::string> args{"sweep", "--manifest", (fx.dir.path() / "subset.jsonl").string(),
                                  "--images", fx.data.image_root.string(), "--cache", cache.string(),
                                  "-o", (fx.dir.path() / out).string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return Cli(args);
  };
  WriteManifest(fx.dir.path() / "subset.jsonl", fx.subset);
  const CliRun cold = sweep("cold", {"--backend", "mock-perturb", "--jitter", "12", "--fail-prob", "0.2",
                                     "--mock-seed", "3"});
  if (cold.code != 0) f.Fail("cold sweep failed: " + cold.err);
  const CliRun warm = sweep("warm", {"--backend", "replay"});
  if (warm.code != 0) f.Fail("replay sweep failed: " + warm.err);
  for (const char* name : {"report.csv", "report.txt"}) {
    if (ReadTextFile(fx.dir.path() / "cold" / name) != ReadTextFile(fx.dir.path() / "warm" / name)) {
      f.Fail(fmt::format("replayed {} differs", name));
    }
  }
  // Rescore runs with no cache and no backend configured.
  const CliRun rescored = Cli({"rescore", "--records", (fx.dir.path() / "warm" / "records.jsonl").string(),
                               "-o", (fx.dir.path() / "rescored").string()});
  if (rescored.code != 0) f.Fail("rescore failed: " + rescored.err);
  for (const char* name : {"report.csv", "report.txt"}) {
    if (ReadTextFile(fx.dir.path() / "cold" / name) != ReadTextFile(fx.dir.path() / "rescored" / name)) {
      f.Fail(fmt::format("rescored {} differs", name));
    }
  }
  std::size_t cached = 0;
  for (const auto& e : fs::directory_iterator(cache)) cached += e.path().extension() == ".json";
  return Done(f, fmt::format("replay and rescore reproduce report.csv and report.txt byte for byte "
                             "({} cached responses)", cached));
}

// 9 -------------------------------------------------------------------------

Outcome ImprovementArithmetic() {
  Findings f;
  const double iou = RelativeChange(0.27, 0.56).relative_change_pct;
  const double giou = RelativeChange(0.18, 0.53).relative_change_pct;
  if (!Near(iou, 107.4, 0.1)) f.Fail(fmt::format("IoU improvement {}", iou));
  if (!Near(giou, 194.4, 0.1)) f.Fail(fmt::format("GIoU improvement {}", giou));
  return Done(f, fmt::format("IoU {:+.1f}%, GIoU {:+.1f}%", iou, giou));
}

// 10 ------------------------------------------------------------------------

// Standard sweep with distinct, exactly representable means per row so the
// golden files pin labels, order and number formatting.
SweepReport GoldenReport() {
  SweepReport report;
  const auto configs = EnumerateConfigs(SweepSpec::Standard());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    AggregateSummary s;
    s.n_scored = 500 - i;
    s.n_failed = i;
    s.mean_iou = 0.25 + static_cast<double>(i) / 128.0;
    s.mean_giou = -0.5 + static_cast<double>(i) / 64.0;
    report.rows.push_back({configs[i], s});
  }
  return report;
}

Outcome TableFidelity(const Fixture& fx, const fs::path& golden_dir) {
  Findings f;
  const SweepReport report = GoldenReport();
  const std::string csv = RenderCsv(report), table = RenderTable(report);
  if (csv != ReadTextFile(golden_dir / "standard_report.csv")) f.Fail("CSV differs from golden file");
  if (table != ReadTextFile(golden_dir / "standard_report.txt")) f.Fail("table differs from golden file");
  if (RenderTable(GoldenReport()) != table) f.Fail("rendering is not deterministic");

  // A real sweep lists the same configurations in the same order.
  MockEchoBackend echo;
  SweepSpec spec = SweepSpec::Standard();
  spec.parallelism = 3;
  const SweepResult r = RunSweep(spec, fx.subset, echo, {fx.data.image_root, std::nullopt});
  std::istringstream golden_table(ReadTextFile(golden_dir / "standard_report.txt"));
  std::string line;
  std::getline(golden_table, line);
  std::getline(golden_table, line);
  for (const auto& row : r.report.rows) {
    std::getline(golden_table, line);
    if (line.rfind(ConfigLabel(row.config) + " ", 0) != 0) {
      f.Fail(fmt::format("sweep row {} does not match golden line '{}'", ConfigLabel(row.config), line));
    }
  }
  std::size_t csv_rows = 0;
  for (char c : csv) csv_rows += c == '\n';
  return Done(f, fmt::format("{} CSV rows and {} table rows match the golden files", csv_rows - 1,
                             r.report.rows.size()));
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no runtime limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace gridloc::acceptance

int main(int argc, char** argv) {
  using namespace gridloc::acceptance;
  const std::filesystem::path golden_dir = argc > 1 ? argv[1] : GRIDLOC_GOLDEN_DIR;
  const Fixture fx;
  const std::vector<Criterion> criteria{
      {1, "compositing exactness", 10, CompositingExactness},
      {2, "line geometry", 1, LineGeometry},
      {3, "metric oracle equivalence", 30, MetricOracle},
      {4, "worked metric values", 0, WorkedMetrics},
      {5, "parser robustness", 30, ParserRobustness},
      {6, "end-to-end echo closure", 60, [&] { return EchoClosure(fx); }},
      {7, "end-to-end perturbation check", 0, [&] { return PerturbCheck(fx); }},
      {8, "determinism and resumability", 0, [&] { return DeterminismAndResume(fx); }},
      {9, "improvement arithmetic", 0, ImprovementArithmetic},
      {10, "table fidelity", 0, [&] { return TableFidelity(fx, golden_dir); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_s > 0 && secs >= c.limit_s) {
      o = {false, fmt::format("took {:.2f} s, limit {:.0f} s; {}", secs, c.limit_s, o.detail)};
    }
    const std::string limit = c.limit_s > 0 ? fmt::format(" < {:.0f} s", c.limit_s) : "";
    std::cout << fmt::format("{} [{:2d}] {} ({:.2f} s{}): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                             secs, limit, o.detail)
              << std::flush;
    failed += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
