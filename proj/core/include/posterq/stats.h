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

// Correlation, accuracy and agreement statistics.

#ifndef POSTERQ_STATS_H_
#define POSTERQ_STATS_H_

#include <optional>
#include <span>
#include <vector>

#include "posterq/score.h"

namespace posterq {

// Paired prediction / ground-truth series. Construction checks equal length
// and finiteness (Error kLengthMismatch / kNotFinite).
class PairedSeries {
 public:
  PairedSeries(std::vector<double> pred, std::vector<double> gt);

  std::span<const double> pred() const { return pred_; }
  std::span<const double> gt() const { return gt_; }
  std::size_t size() const { return pred_.size(); }

 private:
  std::vector<double> pred_;
  std::vector<double> gt_;
};

// Pearson linear correlation. Error kDegenerateSeries if either side is
// constant, kEmptySeries if n < 2.
double plcc(const PairedSeries& s);

// Spearman rank correlation with mean ranks for ties.
double srcc(const PairedSeries& s);

// 1-based fractional ranks; tied values share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

// Percentage of pairs with |pred - gt| <= k (inclusive).
double acc_at_k(const PairedSeries& s, double k);

// Units x coders grid; std::nullopt marks a missing rating.
class ReliabilityMatrix {
 public:
  using Row = std::vector<std::optional<double>>;

  ReliabilityMatrix() = default;
  // All rows must have the same number of coders; values must be finite.
  explicit ReliabilityMatrix(std::vector<Row> units);

  const std::vector<Row>& units() const { return units_; }
  std::size_t num_units() const { return units_.size(); }
  std::size_t num_coders() const {
    return units_.empty() ? 0 : units_.front().size();
  }

 private:
  std::vector<Row> units_;
};

struct AlphaResult {
  double alpha = 1.0;
  // True when expected disagreement is zero (every pairable value
  // identical); alpha is then reported as 1 by convention.
  bool no_expected_disagreement = false;
  std::size_t pairable_values = 0;
};

// Krippendorff's alpha with the interval metric (c - k)^2, using the
// coincidence formulation over units holding at least two ratings.
// Error kUndefined when no unit has two ratings.
AlphaResult krippendorff_alpha_interval(const ReliabilityMatrix& m);

// Percentage of within-unit rating pairs whose difference is <= margin.
// Error kNoPairableUnits when no unit has two ratings.
double loose_accuracy(const ReliabilityMatrix& m, double margin = 0.5);

// Mean squared error over all five dimensions.
double mse(const ScoreVector& pred, const ScoreVector& gt);

}  // namespace posterq

#endif  // POSTERQ_STATS_H_
