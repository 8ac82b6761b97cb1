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

// Subject-fidelity scoring on precomputed product-region features. DINO and
// CLIP similarities are embedding cosines between the original and the
// generated poster; LPIPS arrives as an opaque precomputed distance.

#ifndef POSTERQ_FIDELITY_H_
#define POSTERQ_FIDELITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace posterq {

// Throws Error(kLengthMismatch) or Error(kZeroVector).
double cosine_sim(std::span<const double> a, std::span<const double> b);

struct FeatureRecord {
  std::string case_id;
  std::string model;
  std::vector<double> dino_ref;
  std::vector<double> dino_gen;
  std::vector<double> clip_ref;
  std::vector<double> clip_gen;
  std::optional<double> lpips;
};

struct FidelityRow {
  std::string model;
  std::size_t cases = 0;
  double dino_sim_mean = 0.0;
  double clip_score_mean = 0.0;
  // Absent when no case carried an LPIPS value.
  std::optional<double> lpips_mean;
  std::size_t lpips_cases = 0;
};

// Aggregates the cases of one model in ascending case_id order.
// Error kNoRecords on empty input, kInvalidArgument on mixed models.
FidelityRow fidelity_row(std::span<const FeatureRecord> records);

// One row per model, keyed (and therefore ordered) by model name.
std::map<std::string, FidelityRow> fidelity_rows(
    std::span<const FeatureRecord> records);

}  // namespace posterq

#endif  // POSTERQ_FIDELITY_H_
