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

// Reward for group-relative policy optimization of a score-predicting
// evaluator:
//
//   total   = r_score + lambda_fmt * r_fmt
//   r_score = lambda_score * r_acc + (1 - lambda_score) * r_dist
//   r_acc   = 1/5 * sum_i p_i * [|pred_i - gt_i| <= tau]   (all 5 dimensions)
//             p_i = tier_penalty if tier(pred_i) != tier(gt_i), else 1
//   r_dist  = exp(-alpha * ||sub(pred) - sub(gt)||_2)     (4 sub-dimensions)
//
// An output that fails to parse receives zero for every component.

#ifndef POSTERQ_REWARD_H_
#define POSTERQ_REWARD_H_

#include <span>
#include <vector>

#include "posterq/output_parser.h"
#include "posterq/score.h"

namespace posterq {

struct RewardConfig {
  double tau = 0.2;
  double lambda_score = 0.65;
  double alpha = 0.5;
  double tier_penalty = 0.7;
  // Format-reward weight. Not pinned by the method description; 1.0 here.
  double lambda_fmt = 1.0;
  int group_size = 4;
  double advantage_epsilon = 1e-8;

  // Throws Error(kConfigError) when a field is outside its domain.
  void validate() const;

  friend bool operator==(const RewardConfig&, const RewardConfig&) = default;
};

struct RewardBreakdown {
  int r_fmt = 0;
  double r_acc = 0.0;
  double r_dist = 0.0;
  double r_score = 0.0;
  double total = 0.0;
};

int format_reward(const ModelOutput& output);

double accuracy_reward(const ScoreVector& pred, const ScoreVector& gt,
                       const RewardConfig& cfg = {});

double distribution_reward(const ScoreVector& pred, const ScoreVector& gt,
                           const RewardConfig& cfg = {});

RewardBreakdown total_reward(const ModelOutput& output, const ScoreVector& gt,
                             const RewardConfig& cfg = {});

// Within-group standardization: (r - mean) / (population_std + epsilon).
// Throws Error(kLengthMismatch) unless rewards.size() == cfg.group_size.
std::vector<double> group_advantages(std::span<const double> rewards,
                                     const RewardConfig& cfg = {});

}  // namespace posterq

#endif  // POSTERQ_REWARD_H_
