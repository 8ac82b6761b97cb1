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

// Dataset statistics over annotation records: inter-dimension correlation,
// weakest-link attribution, score and rationale-length distributions,
// rationale edit rate and per-source means. Emitters produce plot-ready CSV.

#ifndef POSTERQ_DATASET_ANALYSIS_H_
#define POSTERQ_DATASET_ANALYSIS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posterq/score.h"

namespace posterq {

struct CorrelationMatrix {
  // Pearson correlations over the four sub-dimensions. An off-diagonal entry
  // is empty when one of its dimensions is constant across the records.
  std::array<std::array<std::optional<double>, kNumSubDimensions>,
             kNumSubDimensions>
      entries{};
  // Mean of the defined upper-triangle entries.
  std::optional<double> mean_offdiag;
  std::size_t undefined_entries = 0;
};

// Error kEmptySeries with fewer than two records.
CorrelationMatrix correlation_matrix(std::span<const AnnotationRecord> records);

struct WeakestLinkReport {
  double threshold = 3.0;
  std::size_t total = 0;
  std::size_t flagged = 0;
  // Bottleneck attributions per sub-dimension (canonical-order tie-break).
  std::array<std::size_t, kNumSubDimensions> counts{};
  std::array<double, kNumSubDimensions> percentages{};
  // Flagged records whose minimum is shared by several sub-dimensions, and
  // how often each sub-dimension took part in such a tie.
  std::size_t tied_records = 0;
  std::array<std::size_t, kNumSubDimensions> tie_participation{};
};

// A record is flagged when its lowest sub-dimension score is strictly below
// `threshold`; Overall is not considered.
WeakestLinkReport weakest_link(std::span<const AnnotationRecord> records,
                               double threshold = 3.0);

struct DistributionSummary {
  // bins + 1 edges; the last bin is closed on the right.
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population
};

// Equal-width histogram of `values` over [lo, hi]; values outside the range
// fall into the nearest end bin. Error kInvalidArgument if bins < 1 or
// hi <= lo.
DistributionSummary summarize(std::span<const double> values, double lo,
                              double hi, int bins);

// Score histogram over [1, 5] for one dimension.
DistributionSummary score_distribution(std::span<const AnnotationRecord> records,
                                       Dimension dim, int bins);

// Rationale length in characters (Unicode scalar values) over
// [0, longest rationale]; records without a rationale are skipped.
DistributionSummary cot_length_distribution(
    std::span<const AnnotationRecord> records, int bins);

// 100 * levenshtein(original, edited) / |original|, in characters. May exceed
// 100 when the edit lengthens the text. Error kEmptyOriginal.
double cot_edit_rate(std::string_view original, std::string_view edited);

struct SourceMeans {
  std::array<std::size_t, kNumSources> counts{};
  // Rows for sources with zero records are empty.
  std::array<std::optional<std::array<double, kNumDimensions>>, kNumSources>
      means{};
  std::vector<SourceKind> missing_sources;
};

SourceMeans per_source_means(std::span<const AnnotationRecord> records);

// CSV emitters.
std::string distribution_csv(const DistributionSummary& summary);
std::string correlation_csv(const CorrelationMatrix& matrix);
std::string source_means_csv(const SourceMeans& means);
std::string weakest_link_csv(const WeakestLinkReport& report);

}  // namespace posterq

#endif  // POSTERQ_DATASET_ANALYSIS_H_
