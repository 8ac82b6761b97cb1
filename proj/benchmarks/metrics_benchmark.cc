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

#include "posterq/stats.h"
#include "posterq/text_metrics.h"

namespace posterq {
namespace {

std::vector<double> grid_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> grid(10, 50);
  std::vector<double> v(n);
  for (double& x : v) x = grid(rng) / 10.0;
  return v;
}

void BM_Plcc(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PairedSeries s(grid_series(rng, n), grid_series(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(plcc(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Plcc)->Range(64, 1 << 16);

// Heavy ties: a 0.1 grid on [1, 5] has only 41 distinct values.
void BM_Srcc(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PairedSeries s(grid_series(rng, n), grid_series(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(srcc(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Srcc)->Range(64, 1 << 16);

void BM_KrippendorffAlpha(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> grid(10, 50);
  std::bernoulli_distribution missing(0.1);
  std::vector<ReliabilityMatrix::Row> units(static_cast<std::size_t>(state.range(0)));
  for (auto& row : units) {
    for (int c = 0; c < 3; ++c) {
      row.push_back(missing(rng) ? std::nullopt : std::optional(grid(rng) / 10.0));
    }
  }
  const ReliabilityMatrix m(std::move(units));
  for (auto _ : state) benchmark::DoNotOptimize(krippendorff_alpha_interval(m));
}
BENCHMARK(BM_KrippendorffAlpha)->Range(64, 1 << 14);

std::string random_cjk(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> ch(0x4E00, 0x4E40);
  std::u32string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char32_t>(ch(rng)));
  return scalars_to_utf8(s);
}

void BM_LevenshteinSim(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto len = static_cast<std::size_t>(state.range(0));
  const TextPair pair{random_cjk(rng, len), random_cjk(rng, len)};
  for (auto _ : state) benchmark::DoNotOptimize(normalized_levenshtein_sim(pair));
}
BENCHMARK(BM_LevenshteinSim)->Range(8, 512);

void BM_BagOfCharsCosine(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto len = static_cast<std::size_t>(state.range(0));
  const TextPair pair{random_cjk(rng, len), random_cjk(rng, len)};
  for (auto _ : state) benchmark::DoNotOptimize(bag_of_chars_cosine(pair));
}
BENCHMARK(BM_BagOfCharsCosine)->Range(8, 512);

}  // namespace
}  // namespace posterq
