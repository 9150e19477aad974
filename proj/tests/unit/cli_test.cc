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

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cli.h"
#include "fixture.h"
#include "gridloc/dataset.h"
#include "gridloc/grid.h"
#include "gridloc/image_io.h"
#include "gridloc/sweep.h"
#include "json.hpp"

namespace gridloc {
namespace {

namespace fs = std::filesystem;
using testing::ReadTextFile;
using testing::TempDir;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gridloc");
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ScoreWorkedExample) {
  const CliResult r = Cli({"score", "--gt", "[0, 0, 10, 10]", "--pred", "[5, 5, 15, 15]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "iou=0.142857\ngiou=-0.079365\n");
  EXPECT_EQ(Cli({"score", "--gt", "[0,0,10,10]", "--pred", "(0 0 10 10)"}).out, "iou=1\ngiou=1\n");
}

TEST(Cli, ScoreRejectsBadBoxes) {
  EXPECT_EQ(Cli({"score", "--gt", "[0, 0, 0, 10]", "--pred", "[5, 5, 15, 15]"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"score", "--gt", "nonsense", "--pred", "[5, 5, 15, 15]"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"score", "--gt", "[1, 2, 3, 4] extra", "--pred", "[1, 2, 3, 4]"}).code,
            cli::kExitUsage);
  EXPECT_EQ(Cli({"score", "--gt", "[0, 0, 1, 1]"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, cli::kExitOk);
}

TEST(Cli, Overlay) {
  TempDir dir;
  const ImageBuffer img = testing::PatternImage(90, 60, 0);
  WriteImage(dir.path() / "in.png", img);
  const fs::path out = dir.path() / "out.png";
  const CliResult r = Cli({"overlay", (dir.path() / "in.png").string(), "-o", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadImage(out), Composite(img, GridConfig{9, kBlack, 0.3, 1}));
  const CliResult white = Cli({"overlay", (dir.path() / "in.png").string(), "-o", out.string(),
                         "--cells", "3", "--color", "white", "--alpha", "1", "--line-width", "2"});
  ASSERT_EQ(white.code, 0) << white.err;
  EXPECT_EQ(ReadImage(out), Composite(img, GridConfig{3, kWhite, 1.0, 2}));

  EXPECT_EQ(Cli({"overlay", (dir.path() / "in.png").string(), "--cells", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"overlay", (dir.path() / "in.png").string(), "--alpha", "1.5"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"overlay", (dir.path() / "in.png").string(), "--color", "plaid"}).code,
            cli::kExitUsage);
  EXPECT_EQ(Cli({"overlay", (dir.path() / "missing.png").string()}).code, cli::kExitInfrastructure);
}

class CliSweep : public ::testing::Test {
 protected:
  void SetUp() override { data = testing::WriteFixtureDataset(dir.path(), 3); }
  // A small sweep; `overrides` replace or add flags.
  std::vector<std::string> Base(const fs::path& out,
                                const std::map<std::string, std::string>& overrides = {}) {
    std::map<std::string, std::string> flags{{"--annotations", data.annotations.string()},
                                             {"--images", data.image_root.string()},
                                             {"--subset", "3"},
                                             {"--sizes", "3,9"},
                                             {"--colors", "black"},
                                             {"--alphas", "0.3,1.0"},
                                             {"-o", out.string()}};
    for (const auto& [k, v] : overrides) flags[k] = v;
    std::vector<std::string> args{"sweep"};
    for (const auto& [k, v] : flags) {
      args.push_back(k);
      if (!v.empty()) args.push_back(v);
    }
    return args;
  }
  TempDir dir;
  testing::FixtureDataset data;
};

TEST_F(CliSweep, WritesAllArtifacts) {
  const fs::path out = dir.path() / "run";
  const CliResult r = Cli(Base(out, {{"--panels", "1"}}));
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"subset.jsonl", "records.jsonl", "report.csv", "report.txt", "run.json",
                           "resolved_config.ini"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  EXPECT_NE(r.out.find("3×3 - black - 0.3"), std::string::npos);
  EXPECT_EQ(ReadTextFile(out / "report.csv"),
            "size,color,alpha,mean_iou,mean_giou,n_scored,n_failed\n"
            ",,,1.000000,1.000000,3,0\n"
            "3,black,0.3,1.000000,1.000000,3,0\n"
            "3,black,1.0,1.000000,1.000000,3,0\n"
            "9,black,0.3,1.000000,1.000000,3,0\n"
            "9,black,1.0,1.000000,1.000000,3,0\n");
  const auto meta = nlohmann::json::parse(ReadTextFile(out / "run.json"));
  EXPECT_EQ(meta["backend_kind"], "mock-echo");
  EXPECT_EQ(meta["images"], 3);
  EXPECT_EQ(meta["configs"], 5);
  EXPECT_TRUE(fs::exists(out / "panels"));
  std::size_t panels = 0;
  for (const auto& e : fs::directory_iterator(out / "panels")) {
    ++panels;
    const ImageBuffer p = ReadImage(e.path());
    EXPECT_EQ(p.width(), 200 * 2 + 8);
  }
  EXPECT_GT(panels, 0u);
  EXPECT_NE(ReadTextFile(out / "resolved_config.ini").find("sizes"), std::string::npos);
}

TEST_F(CliSweep, RescoreAndCompare) {
  const fs::path out = dir.path() / "run";
  ASSERT_EQ(
      Cli(Base(out, {{"--backend", "mock-perturb"}, {"--jitter", "15"}, {"--fail-prob", "0.3"}})).code,
      0);
  const CliResult rescored = Cli({"rescore", "--records", (out / "records.jsonl").string()});
  ASSERT_EQ(rescored.code, 0) << rescored.err;
  EXPECT_EQ(rescored.out, ReadTextFile(out / "report.txt"));
  const CliResult strict = Cli({"rescore", "--records", (out / "records.jsonl").string(), "--policy",
                          "strict", "-o", (dir.path() / "strict").string()});
  ASSERT_EQ(strict.code, 0);
  EXPECT_NE(strict.out.find("failure policy: strict"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "strict" / "report.csv"));

  const std::int64_t image_id = ReadRecordLog(out / "records.jsonl").records[0].image_id;
  const CliResult cmp = Cli({"compare", "--records", (out / "records.jsonl").string(), "--images",
                       data.image_root.string(), "--image-id", std::to_string(image_id),
                       "--config", "9x9-black-0.3", "-o", (dir.path() / "cmp").string()});
  ASSERT_EQ(cmp.code, 0) << cmp.err;
  const ImageBuffer panel = ReadImage(dir.path() / "cmp" / (std::to_string(image_id) + "_compare.png"));
  EXPECT_EQ(panel.width(), 408);
  EXPECT_EQ(Cli({"compare", "--records", (out / "records.jsonl").string(), "--images",
                 data.image_root.string(), "--image-id", std::to_string(image_id), "--config",
                 "20x20-black-0.3"})
                .code,
            cli::kExitUsage);
}

TEST_F(CliSweep, ReplayMissesExitWithPartialCode) {
  const fs::path cache = dir.path() / "cache";
  const CliResult w = Cli(Base(dir.path() / "warm", {{"--cache", cache.string()}, {"--sizes", "3"}}));
  ASSERT_EQ(w.code, 0) << w.err;

  const CliResult r =
      Cli(Base(dir.path() / "replay", {{"--backend", "replay"}, {"--cache", cache.string()}}));
  EXPECT_EQ(r.code, cli::kExitPartial) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "replay" / "report.csv"));
  EXPECT_NE(r.err.find("backend errors"), std::string::npos);
}

TEST_F(CliSweep, ConfigFileAndOverrides) {
  const fs::path ini = dir.path() / "sweep.ini";
  testing::WriteTextFile(ini, "[sweep]\nsizes=[5, 9]\ncolors=[\"white\"]\nalphas=[0.5]\nbaseline=false\n");
  const fs::path out = dir.path() / "cfg";
  const CliResult r = Cli({"sweep", "--config", ini.string(), "--annotations", data.annotations.string(),
                     "--images", data.image_root.string(), "--subset", "2", "--sizes", "5",
                     "-o", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  // The flag overrides the file.
  EXPECT_EQ(ReadTextFile(out / "report.csv"),
            "size,color,alpha,mean_iou,mean_giou,n_scored,n_failed\n"
            "5,white,0.5,1.000000,1.000000,2,0\n");

  // The echoed configuration reproduces the run on its own.
  const fs::path again = dir.path() / "again";
  const CliResult r2 = Cli({"sweep", "--config", (out / "resolved_config.ini").string(), "-o",
                            again.string()});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(ReadTextFile(again / "report.csv"), ReadTextFile(out / "report.csv"));
  EXPECT_EQ(ReadTextFile(again / "subset.jsonl"), ReadTextFile(out / "subset.jsonl"));
}

TEST_F(CliSweep, UsageAndInfrastructureErrors) {
  const fs::path out = dir.path() / "bad";
  EXPECT_EQ(Cli(Base(out, {{"--sizes", "1"}})).code, cli::kExitUsage);
  EXPECT_EQ(Cli(Base(out, {{"--subset", "50"}})).code, cli::kExitInfrastructure);
  EXPECT_EQ(Cli(Base(out, {{"--backend", "telepathy"}})).code, cli::kExitUsage);
  EXPECT_EQ(Cli(Base(out, {{"--policy", "harsh"}})).code, cli::kExitUsage);
  fs::remove_all(data.image_root);
  EXPECT_EQ(Cli(Base(out)).code, cli::kExitInfrastructure);
}

TEST_F(CliSweep, SampleCommand) {
  const fs::path manifest = dir.path() / "m.jsonl";
  const CliResult r = Cli({"sample", "--annotations", data.annotations.string(), "-n", "2", "--seed", "5",
                     "-o", manifest.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadManifest(manifest).image_count(), 2u);
  EXPECT_EQ(ReadManifest(manifest).seed, 5u);
  const fs::path out = dir.path() / "from-manifest";
  const CliResult s = Cli({"sweep", "--manifest", manifest.string(), "--images", data.image_root.string(),
                     "--sizes", "3", "--colors", "black", "--alphas", "0.3", "-o", out.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_FALSE(fs::exists(out / "subset.jsonl"));
}

}  // namespace
}  // namespace gridloc
