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

#include "posterq/hard_subset.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "posterq/error.h"
#include "posterq/parallel.h"
#include "posterq/stats.h"

namespace posterq {
namespace {

__extension__ using Wide = unsigned __int128;

// Descending error, ascending id.
bool harder(const ErrorRecord* a, const ErrorRecord* b) {
  if (a->error != b->error) return a->error > b->error;
  return a->id < b->id;
}

}  // namespace

std::vector<ErrorRecord> compute_errors(
    const std::map<std::string, ScoreVector>& preds,
    std::span<const AnnotationRecord> gts) {
  std::vector<ErrorRecord> out;
  out.reserve(gts.size());
  for (const AnnotationRecord& gt : gts) {
    const auto it = preds.find(gt.id);
    if (it == preds.end()) {
      throw Error(ErrorCode::kMissingPrediction, "no prediction for id '" + gt.id + "'");
    }
    out.push_back({gt.id, gt.source, mse(it->second, gt.scores)});
  }
  return out;
}

SelectionPlan plan_quotas(const std::map<SourceKind, std::uint64_t>& populations,
                          std::uint64_t target) {
  SelectionPlan plan;
  plan.target = target;
  std::uint64_t total = 0;
  for (const auto& [source, count] : populations) {
    plan.populations[index_of(source)] = count;
    total += count;
  }
  if (total == 0) throw Error(ErrorCode::kEmptyPopulation, "no samples in any source");

  std::uint64_t assigned = 0;
  for (std::size_t s = 0; s < kNumSources; ++s) {
    // floor(K * N_s / T) in 128-bit arithmetic; exact for any 64-bit inputs
    // and never larger than K.
    const Wide product = static_cast<Wide>(target) * plan.populations[s];
    plan.quotas[s] = static_cast<std::uint64_t>(product / total);
    assigned += plan.quotas[s];
  }
  plan.remainder = target > assigned ? target - assigned : 0;
  return plan;
}

std::map<SourceKind, std::uint64_t> count_sources(
    std::span<const ErrorRecord> errors) {
  std::map<SourceKind, std::uint64_t> counts;
  for (const ErrorRecord& e : errors) ++counts[e.source];
  return counts;
}

std::vector<std::string> select_hard(std::span<const ErrorRecord> errors,
                                     const SelectionPlan& plan,
                                     const SelectOptions& options) {
  std::array<std::vector<const ErrorRecord*>, kNumSources> buckets;
  for (const ErrorRecord& e : errors) {
    if (!std::isfinite(e.error) || e.error < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "error for id '" + e.id + "' is not a finite non-negative value");
    }
    buckets[index_of(e.source)].push_back(&e);
  }
  for (std::size_t s = 0; s < kNumSources; ++s) {
    if (buckets[s].size() != plan.populations[s] ||
        plan.quotas[s] > buckets[s].size()) {
      throw Error(ErrorCode::kQuotaExceedsPopulation,
                  "plan for source '" +
                      std::string(source_name(kAllSources[s])) +
                      "' does not match the error records");
    }
  }

  parallel_for(kNumSources, options.threads, [&](std::size_t s) {
    auto& bucket = buckets[s];
    const auto k = static_cast<std::ptrdiff_t>(plan.quotas[s]);
    std::partial_sort(bucket.begin(), bucket.begin() + k, bucket.end(), harder);
  });

  std::vector<std::string> selected;
  std::vector<const ErrorRecord*> leftovers;
  for (std::size_t s = 0; s < kNumSources; ++s) {
    const auto k = static_cast<std::size_t>(plan.quotas[s]);
    for (std::size_t i = 0; i < buckets[s].size(); ++i) {
      if (i < k) {
        selected.push_back(buckets[s][i]->id);
      } else {
        leftovers.push_back(buckets[s][i]);
      }
    }
  }

  if (options.fill_remainder && plan.remainder > 0) {
    const std::size_t extra =
        std::min<std::size_t>(plan.remainder, leftovers.size());
    std::partial_sort(leftovers.begin(),
                      leftovers.begin() + static_cast<std::ptrdiff_t>(extra),
                      leftovers.end(), harder);
    for (std::size_t i = 0; i < extra; ++i) selected.push_back(leftovers[i]->id);
  }
  return selected;
}

std::vector<std::string> select_global(std::span<const ErrorRecord> errors,
                                       std::uint64_t target) {
  std::vector<const ErrorRecord*> all;
  all.reserve(errors.size());
  for (const ErrorRecord& e : errors) all.push_back(&e);
  const std::size_t k = std::min<std::size_t>(target, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k),
                    all.end(), harder);
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(all[i]->id);
  return out;
}

}  // namespace posterq
