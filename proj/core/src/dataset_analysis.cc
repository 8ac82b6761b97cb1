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

#include "posterq/dataset_analysis.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "posterq/error.h"
#include "posterq/stats.h"
#include "posterq/text_metrics.h"

namespace posterq {

CorrelationMatrix correlation_matrix(std::span<const AnnotationRecord> records) {
  if (records.size() < 2) {
    throw Error(ErrorCode::kEmptySeries,
                "correlation matrix needs at least 2 records");
  }
  std::array<std::vector<double>, kNumSubDimensions> columns;
  for (Dimension dim : kSubDimensions) {
    auto& col = columns[index_of(dim)];
    col.reserve(records.size());
    for (const AnnotationRecord& r : records) col.push_back(r.scores.value(dim));
  }

  CorrelationMatrix m;
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t i = 0; i < kNumSubDimensions; ++i) {
    m.entries[i][i] = 1.0;
    for (std::size_t j = i + 1; j < kNumSubDimensions; ++j) {
      try {
        const double r = plcc(PairedSeries(columns[i], columns[j]));
        m.entries[i][j] = r;
        m.entries[j][i] = r;
        sum += r;
        ++defined;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateSeries) throw;
        ++m.undefined_entries;
      }
    }
  }
  if (defined > 0) m.mean_offdiag = sum / static_cast<double>(defined);
  return m;
}

WeakestLinkReport weakest_link(std::span<const AnnotationRecord> records,
                               double threshold) {
  WeakestLinkReport report;
  report.threshold = threshold;
  report.total = records.size();
  for (const AnnotationRecord& r : records) {
    const auto sub = r.scores.sub_vector();
    const auto min_it = std::min_element(sub.begin(), sub.end());
    if (!(*min_it < threshold)) continue;
    ++report.flagged;
    ++report.counts[static_cast<std::size_t>(min_it - sub.begin())];
    const auto ties = std::count(sub.begin(), sub.end(), *min_it);
    if (ties > 1) {
      ++report.tied_records;
      for (std::size_t i = 0; i < kNumSubDimensions; ++i) {
        if (sub[i] == *min_it) ++report.tie_participation[i];
      }
    }
  }
  if (report.flagged > 0) {
    for (std::size_t i = 0; i < kNumSubDimensions; ++i) {
      report.percentages[i] = 100.0 * static_cast<double>(report.counts[i]) /
                              static_cast<double>(report.flagged);
    }
  }
  return report;
}

DistributionSummary summarize(std::span<const double> values, double lo,
                              double hi, int bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
  if (!(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "empty histogram range");

  DistributionSummary s;
  const auto nbins = static_cast<std::size_t>(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  s.edges.resize(nbins + 1);
  for (std::size_t i = 0; i <= nbins; ++i) {
    s.edges[i] = lo + width * static_cast<double>(i);
  }
  s.edges.back() = hi;
  s.counts.assign(nbins, 0);
  s.n = values.size();
  if (values.empty()) return s;

  double sum = 0.0;
  for (double v : values) {
    const double pos = std::floor((v - lo) / width);
    const auto bin = static_cast<std::size_t>(
        std::clamp(pos, 0.0, static_cast<double>(nbins - 1)));
    ++s.counts[bin];
    sum += v;
  }
  const auto n = static_cast<double>(values.size());
  s.mean = sum / n;
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / n);

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid]
                                    : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return s;
}

DistributionSummary score_distribution(std::span<const AnnotationRecord> records,
                                       Dimension dim, int bins) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const AnnotationRecord& r : records) values.push_back(r.scores.value(dim));
  return summarize(values, kMinScore, kMaxScore, bins);
}

DistributionSummary cot_length_distribution(
    std::span<const AnnotationRecord> records, int bins) {
  std::vector<double> lengths;
  for (const AnnotationRecord& r : records) {
    if (r.cot) lengths.push_back(static_cast<double>(utf8_to_scalars(*r.cot).size()));
  }
  const double longest =
      lengths.empty() ? 1.0 : *std::max_element(lengths.begin(), lengths.end());
  return summarize(lengths, 0.0, std::max(longest, 1.0), bins);
}

double cot_edit_rate(std::string_view original, std::string_view edited) {
  const std::u32string a = utf8_to_scalars(original);
  if (a.empty()) throw Error(ErrorCode::kEmptyOriginal, "original text is empty");
  const std::u32string b = utf8_to_scalars(edited);
  return 100.0 * static_cast<double>(levenshtein(a, b)) /
         static_cast<double>(a.size());
}

SourceMeans per_source_means(std::span<const AnnotationRecord> records) {
  SourceMeans out;
  std::array<std::array<double, kNumDimensions>, kNumSources> sums{};
  for (const AnnotationRecord& r : records) {
    const std::size_t s = index_of(r.source);
    ++out.counts[s];
    for (std::size_t d = 0; d < kNumDimensions; ++d) sums[s][d] += r.scores.values()[d];
  }
  for (SourceKind source : kAllSources) {
    const std::size_t s = index_of(source);
    if (out.counts[s] == 0) {
      out.missing_sources.push_back(source);
      continue;
    }
    std::array<double, kNumDimensions> mean{};
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      mean[d] = sums[s][d] / static_cast<double>(out.counts[s]);
    }
    out.means[s] = mean;
  }
  return out;
}

std::string distribution_csv(const DistributionSummary& summary) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < summary.counts.size(); ++i) {
    out += fmt::format("{},{},{}\n", summary.edges[i], summary.edges[i + 1],
                       summary.counts[i]);
  }
  return out;
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
  std::string out = "dimension";
  for (Dimension dim : kSubDimensions) out += fmt::format(",{}", dimension_name(dim));
  out += "\n";
  for (Dimension row : kSubDimensions) {
    out += dimension_name(row);
    for (Dimension col : kSubDimensions) {
      const auto& e = matrix.entries[index_of(row)][index_of(col)];
      out += e ? fmt::format(",{}", *e) : std::string(",");
    }
    out += "\n";
  }
  return out;
}

std::string source_means_csv(const SourceMeans& means) {
  std::string out = "source,count";
  for (Dimension dim : kAllDimensions) out += fmt::format(",{}", dimension_name(dim));
  out += "\n";
  for (SourceKind source : kAllSources) {
    const auto& row = means.means[index_of(source)];
    if (!row) continue;
    out += fmt::format("{},{}", source_name(source), means.counts[index_of(source)]);
    for (double v : *row) out += fmt::format(",{}", v);
    out += "\n";
  }
  return out;
}

std::string weakest_link_csv(const WeakestLinkReport& report) {
  std::string out = "dimension,count,percentage,tie_participation\n";
  for (Dimension dim : kSubDimensions) {
    const std::size_t i = index_of(dim);
    out += fmt::format("{},{},{},{}\n", dimension_name(dim), report.counts[i],
                       report.percentages[i], report.tie_participation[i]);
  }
  return out;
}

}  // namespace posterq
