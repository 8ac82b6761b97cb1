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

#include "posterq/stats.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "posterq/error.h"

namespace posterq {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

// Pearson on already-validated series; throws if either is constant.
double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2) {
    throw Error(ErrorCode::kEmptySeries, "correlation needs at least 2 pairs");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (is_constant(x) || is_constant(y) || sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateSeries, "series has zero variance");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace

PairedSeries::PairedSeries(std::vector<double> pred, std::vector<double> gt)
    : pred_(std::move(pred)), gt_(std::move(gt)) {
  if (pred_.size() != gt_.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "pred has " + std::to_string(pred_.size()) + " values, gt has " +
                    std::to_string(gt_.size()));
  }
  for (std::size_t i = 0; i < pred_.size(); ++i) {
    if (!std::isfinite(pred_[i]) || !std::isfinite(gt_[i])) {
      throw Error(ErrorCode::kNotFinite,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

double plcc(const PairedSeries& s) { return pearson(s.pred(), s.gt()); }

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean((i+1)..j).
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double srcc(const PairedSeries& s) {
  if (s.size() < 2) {
    throw Error(ErrorCode::kEmptySeries, "correlation needs at least 2 pairs");
  }
  const std::vector<double> rp = fractional_ranks(s.pred());
  const std::vector<double> rg = fractional_ranks(s.gt());
  return pearson(rp, rg);
}

double acc_at_k(const PairedSeries& s, double k) {
  if (s.size() == 0) throw Error(ErrorCode::kEmptySeries, "acc@k on empty series");
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "k must be > 0");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.pred()[i] - s.gt()[i]) <= k + kBoundaryTolerance) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(s.size());
}

ReliabilityMatrix::ReliabilityMatrix(std::vector<Row> units)
    : units_(std::move(units)) {
  const std::size_t coders = num_coders();
  for (const Row& row : units_) {
    if (row.size() != coders) {
      throw Error(ErrorCode::kLengthMismatch, "ragged reliability matrix");
    }
    for (const auto& cell : row) {
      if (cell && !std::isfinite(*cell)) {
        throw Error(ErrorCode::kNotFinite, "non-finite rating");
      }
    }
  }
}

AlphaResult krippendorff_alpha_interval(const ReliabilityMatrix& m) {
  // Observed disagreement sums within-unit pairs directly so perfect
  // agreement gives exactly zero. Expected disagreement uses the identity
  // sum_{i != j} (v_i - v_j)^2 = 2 n sum (v_i - mean)^2 over pooled values.
  double observed = 0.0;
  std::vector<double> pooled;
  std::vector<double> unit_values;
  for (const ReliabilityMatrix::Row& row : m.units()) {
    unit_values.clear();
    for (const auto& cell : row) {
      if (cell) unit_values.push_back(*cell);
    }
    if (unit_values.size() < 2) continue;
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < unit_values.size(); ++i) {
      for (std::size_t j = i + 1; j < unit_values.size(); ++j) {
        const double d = unit_values[i] - unit_values[j];
        pair_sum += d * d;
      }
    }
    observed += 2.0 * pair_sum / static_cast<double>(unit_values.size() - 1);
    pooled.insert(pooled.end(), unit_values.begin(), unit_values.end());
  }
  if (pooled.empty()) {
    throw Error(ErrorCode::kUndefined, "no unit has two or more ratings");
  }
  const double n = static_cast<double>(pooled.size());
  const double grand = mean_of(pooled);
  double ss_total = 0.0;
  for (double v : pooled) ss_total += (v - grand) * (v - grand);

  AlphaResult result;
  result.pairable_values = pooled.size();
  const double d_o = observed / n;
  const double d_e = 2.0 * n * ss_total / (n * (n - 1.0));
  if (is_constant(pooled) || d_e == 0.0) {
    result.alpha = 1.0;
    result.no_expected_disagreement = true;
    return result;
  }
  result.alpha = 1.0 - d_o / d_e;
  return result;
}

double loose_accuracy(const ReliabilityMatrix& m, double margin) {
  if (!(margin >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must be >= 0");
  }
  std::size_t pairs = 0;
  std::size_t within = 0;
  std::vector<double> unit_values;
  for (const ReliabilityMatrix::Row& row : m.units()) {
    unit_values.clear();
    for (const auto& cell : row) {
      if (cell) unit_values.push_back(*cell);
    }
    for (std::size_t i = 0; i < unit_values.size(); ++i) {
      for (std::size_t j = i + 1; j < unit_values.size(); ++j) {
        ++pairs;
        if (std::abs(unit_values[i] - unit_values[j]) <= margin + kBoundaryTolerance) {
          ++within;
        }
      }
    }
  }
  if (pairs == 0) {
    throw Error(ErrorCode::kNoPairableUnits, "no unit has two or more ratings");
  }
  return 100.0 * static_cast<double>(within) / static_cast<double>(pairs);
}

double mse(const ScoreVector& pred, const ScoreVector& gt) {
  double sum = 0.0;
  for (Dimension dim : kAllDimensions) {
    const double d = pred.value(dim) - gt.value(dim);
    sum += d * d;
  }
  return sum / static_cast<double>(kNumDimensions);
}

}  // namespace posterq
