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

#include "posterq/reward.h"

#include <cmath>
#include <string>

#include "posterq/error.h"

namespace posterq {

void RewardConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfigError, msg);
  };
  if (!(std::isfinite(tau) && tau > 0.0)) fail("tau must be > 0");
  if (!(lambda_score >= 0.0 && lambda_score <= 1.0)) {
    fail("lambda_score must be in [0, 1]");
  }
  if (!(std::isfinite(alpha) && alpha > 0.0)) fail("alpha must be > 0");
  if (!(tier_penalty > 0.0 && tier_penalty <= 1.0)) {
    fail("tier_penalty must be in (0, 1]");
  }
  if (!(std::isfinite(lambda_fmt) && lambda_fmt >= 0.0)) {
    fail("lambda_fmt must be >= 0");
  }
  if (group_size < 2) fail("group_size must be >= 2");
  if (!(std::isfinite(advantage_epsilon) && advantage_epsilon > 0.0)) {
    fail("advantage_epsilon must be > 0");
  }
}

int format_reward(const ModelOutput& output) { return output.valid() ? 1 : 0; }

double accuracy_reward(const ScoreVector& pred, const ScoreVector& gt,
                       const RewardConfig& cfg) {
  double sum = 0.0;
  for (Dimension dim : kAllDimensions) {
    const double diff = std::abs(pred.value(dim) - gt.value(dim));
    if (diff > cfg.tau + kBoundaryTolerance) continue;
    const bool same_tier = tier_of(pred[dim]) == tier_of(gt[dim]);
    sum += same_tier ? 1.0 : cfg.tier_penalty;
  }
  return sum / static_cast<double>(kNumDimensions);
}

double distribution_reward(const ScoreVector& pred, const ScoreVector& gt,
                           const RewardConfig& cfg) {
  const auto p = pred.sub_vector();
  const auto g = gt.sub_vector();
  double sq = 0.0;
  for (std::size_t i = 0; i < kNumSubDimensions; ++i) {
    const double d = p[i] - g[i];
    sq += d * d;
  }
  return std::exp(-cfg.alpha * std::sqrt(sq));
}

RewardBreakdown total_reward(const ModelOutput& output, const ScoreVector& gt,
                             const RewardConfig& cfg) {
  RewardBreakdown b;
  if (!output.valid() || !output.scores) return b;
  const ScoreVector& pred = *output.scores;
  b.r_fmt = 1;
  b.r_acc = accuracy_reward(pred, gt, cfg);
  b.r_dist = distribution_reward(pred, gt, cfg);
  b.r_score = cfg.lambda_score * b.r_acc + (1.0 - cfg.lambda_score) * b.r_dist;
  b.total = b.r_score + cfg.lambda_fmt * static_cast<double>(b.r_fmt);
  return b;
}

std::vector<double> group_advantages(std::span<const double> rewards,
                                     const RewardConfig& cfg) {
  if (cfg.group_size < 2 ||
      rewards.size() != static_cast<std::size_t>(cfg.group_size)) {
    throw Error(ErrorCode::kLengthMismatch,
                "group of " + std::to_string(rewards.size()) +
                    " rewards, expected " + std::to_string(cfg.group_size));
  }
  const double n = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double denom = std::sqrt(var / n) + cfg.advantage_epsilon;

  std::vector<double> out;
  out.reserve(rewards.size());
  for (double r : rewards) out.push_back((r - mean) / denom);
  return out;
}

}  // namespace posterq
