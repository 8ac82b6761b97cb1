// Copyright 2026 The posterq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include "posterq/hard_subset.h"
#include "posterq/output_parser.h"
#include "posterq/reward.h"

namespace posterq {
namespace {

ScoreVector random_vector(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(10, 50);
  return ScoreVector(grid(rng) / 10.0, grid(rng) / 10.0, grid(rng) / 10.0,
                     grid(rng) / 10.0, grid(rng) / 10.0);
}

void BM_ParseOutput(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::string raw = "<think>" + std::string(static_cast<std::size_t>(state.range(0)), 'x') +
                          "</think>\n<answer>" + format_answer(random_vector(rng)) + "</answer>";
  if (!parse_output(raw).valid()) state.SkipWithError("fixture does not parse");
  for (auto _ : state) benchmark::DoNotOptimize(parse_output(raw));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(raw.size()));
}
BENCHMARK(BM_ParseOutput)->Range(64, 1 << 14);

void BM_TotalReward(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ModelOutput out =
      parse_output("<answer>" + format_answer(random_vector(rng)) + "</answer>");
  const ScoreVector gt = random_vector(rng);
  const RewardConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(total_reward(out, gt, cfg));
}
BENCHMARK(BM_TotalReward);

void BM_SelectHard(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> src(0, kNumSources - 1);
  std::uniform_real_distribution<double> err(0.0, 4.0);
  std::vector<ErrorRecord> records(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i] = {"id" + std::to_string(i), kAllSources[src(rng)], err(rng)};
  }
  const SelectionPlan plan = plan_quotas(count_sources(records), records.size() / 6);
  const SelectOptions options{false, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(select_hard(records, plan, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SelectHard)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {1, 4}});

}  // namespace
}  // namespace posterq
