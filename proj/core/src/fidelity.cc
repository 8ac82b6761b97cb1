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

#include "posterq/fidelity.h"

#include <algorithm>
#include <cmath>

#include "posterq/error.h"

namespace posterq {

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kLengthMismatch,
                "feature vectors of length " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!std::isfinite(dot) || !std::isfinite(na) || !std::isfinite(nb)) {
    throw Error(ErrorCode::kNotFinite, "non-finite feature value");
  }
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "feature vector has zero norm");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

FidelityRow fidelity_row(std::span<const FeatureRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kNoRecords, "no feature records");

  std::vector<const FeatureRecord*> sorted;
  sorted.reserve(records.size());
  for (const FeatureRecord& r : records) {
    if (r.model != records.front().model) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fidelity_row given records of models '" +
                      records.front().model + "' and '" + r.model + "'");
    }
    sorted.push_back(&r);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const FeatureRecord* a, const FeatureRecord* b) {
              return a->case_id < b->case_id;
            });

  FidelityRow row;
  row.model = records.front().model;
  row.cases = sorted.size();
  double dino = 0.0, clip = 0.0, lpips = 0.0;
  for (const FeatureRecord* r : sorted) {
    dino += cosine_sim(r->dino_ref, r->dino_gen);
    clip += cosine_sim(r->clip_ref, r->clip_gen);
    if (r->lpips) {
      lpips += *r->lpips;
      ++row.lpips_cases;
    }
  }
  const auto n = static_cast<double>(row.cases);
  row.dino_sim_mean = dino / n;
  row.clip_score_mean = clip / n;
  if (row.lpips_cases > 0) {
    row.lpips_mean = lpips / static_cast<double>(row.lpips_cases);
  }
  return row;
}

std::map<std::string, FidelityRow> fidelity_rows(
    std::span<const FeatureRecord> records) {
  std::map<std::string, std::vector<FeatureRecord>> by_model;
  for (const FeatureRecord& r : records) by_model[r.model].push_back(r);
  std::map<std::string, FidelityRow> rows;
  for (const auto& [model, group] : by_model) {
    rows.emplace(model, fidelity_row(group));
  }
  return rows;
}

}  // namespace posterq
