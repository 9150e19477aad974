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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "gridloc/grid.h"
#include "gridloc/metrics.h"
#include "gridloc/model_client.h"
#include "gridloc/parser.h"

namespace gridloc {
namespace {

ImageBuffer NoiseImage(int w, int h) {
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h * 3);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
  return ImageBuffer(w, h, std::move(bytes));
}

void BM_Composite(benchmark::State& state) {
  const ImageBuffer img = NoiseImage(640, 480);
  const GridConfig cfg{static_cast<int>(state.range(0)), kWhite, 0.5, 1};
  for (auto _ : state) benchmark::DoNotOptimize(Composite(img, cfg));
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_Composite)->Arg(3)->Arg(9)->Arg(30);

void BM_GridMask(benchmark::State& state) {
  const GridConfig cfg{9, kBlack, 0.3, 1};
  for (auto _ : state) benchmark::DoNotOptimize(RenderGridMask(640, 480, cfg));
}
BENCHMARK(BM_GridMask);

void BM_Score(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> c(0.0, 300.0);
  std::vector<BBox> boxes;
  for (int i = 0; i < 1024; ++i) {
    const double x = c(rng), y = c(rng);
    boxes.emplace_back(x, y, x + 1 + c(rng), y + 1 + c(rng));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Score(boxes[i & 1023], boxes[(i + 7) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Score);

void BM_ParseReply(benchmark::State& state) {
  std::string reply;
  for (int i = 0; i < state.range(0); ++i) {
    reply += "Scanning the left half (rows 0-240) I see a figure near (120, 80). ";
  }
  reply += "\nFinal coordinates: [112.5, 64, 301, 455]";
  for (auto _ : state) benchmark::DoNotOptimize(ParsePrediction(reply, 640, 480));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(reply.size()));
}
BENCHMARK(BM_ParseReply)->Arg(1)->Arg(10)->Arg(100);

void BM_RequestDigest(benchmark::State& state) {
  const ImageBuffer img = NoiseImage(640, 480);
  const std::string prompt = BuildPrompt("person");
  for (auto _ : state) benchmark::DoNotOptimize(RequestDigest(img, prompt, "mock-echo"));
}
BENCHMARK(BM_RequestDigest);

}  // namespace
}  // namespace gridloc

BENCHMARK_MAIN();
