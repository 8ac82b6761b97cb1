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

// Source-stratified selection of the highest-error training samples.
//
// Every sample gets e_j = mean squared error of the supervised model's five
// scores. Each source s receives quota K_s = floor(K * N_s / sum N), and the
// K_s samples of s with the largest error are kept. The floor remainder
// K - sum K_s is left unfilled unless fill_remainder is requested.

#ifndef POSTERQ_HARD_SUBSET_H_
#define POSTERQ_HARD_SUBSET_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "posterq/score.h"

namespace posterq {

struct ErrorRecord {
  std::string id;
  SourceKind source = SourceKind::kMerchantHq;
  double error = 0.0;
};

// Error kMissingPrediction(id) when a ground-truth id has no prediction.
std::vector<ErrorRecord> compute_errors(
    const std::map<std::string, ScoreVector>& preds,
    std::span<const AnnotationRecord> gts);

struct SelectionPlan {
  std::uint64_t target = 0;  // K
  std::array<std::uint64_t, kNumSources> populations{};
  std::array<std::uint64_t, kNumSources> quotas{};
  std::uint64_t remainder = 0;  // K - sum of quotas
};

// Error kEmptyPopulation when every population is zero.
SelectionPlan plan_quotas(const std::map<SourceKind, std::uint64_t>& populations,
                          std::uint64_t target);

// Population per source counted from error records.
std::map<SourceKind, std::uint64_t> count_sources(
    std::span<const ErrorRecord> errors);

struct SelectOptions {
  // Top up the floor remainder from the largest errors not yet selected.
  bool fill_remainder = false;
  // Worker threads for the per-source sorts; the result does not depend on it.
  int threads = 1;
};

// Ids ordered by (source canonical order, descending error, ascending id),
// followed by any remainder top-up in global rank order.
// Error kQuotaExceedsPopulation if the plan does not match `errors`.
std::vector<std::string> select_hard(std::span<const ErrorRecord> errors,
                                     const SelectionPlan& plan,
                                     const SelectOptions& options = {});

// Unstratified reading: the `target` largest errors overall, in rank order.
std::vector<std::string> select_global(std::span<const ErrorRecord> errors,
                                       std::uint64_t target);

}  // namespace posterq

#endif  // POSTERQ_HARD_SUBSET_H_
