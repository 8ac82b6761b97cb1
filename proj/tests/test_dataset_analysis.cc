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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fixtures.h"
#include "oracle.h"
#include "posterq/dataset_analysis.h"
#include "posterq/error.h"

namespace posterq {
namespace {

AnnotationRecord rec(const std::string& id, ScoreVector v,
                     SourceKind s = SourceKind::kMerchantHq) {
  AnnotationRecord r;
  r.id = id;
  r.source = s;
  r.scores = v;
  return r;
}

TEST(CorrelationMatrix, PerfectCollinearity) {
  std::vector<AnnotationRecord> rs;
  for (int i = 0; i < 10; ++i) {
    const double v = 1.0 + 0.4 * i;
    rs.push_back(rec("r" + std::to_string(i), ScoreVector(v, v, v, v, 3)));
  }
  const CorrelationMatrix m = correlation_matrix(rs);
  for (const auto& row : m.entries) {
    for (const auto& e : row) EXPECT_NEAR(*e, 1.0, 1e-12);
  }
  EXPECT_NEAR(*m.mean_offdiag, 1.0, 1e-12);
}

TEST(CorrelationMatrix, SymmetricUnitDiagonal) {
  std::mt19937_64 rng(4);
  std::vector<AnnotationRecord> rs;
  for (int i = 0; i < 50; ++i) rs.push_back(rec("r" + std::to_string(i), fixtures::grid_vector(rng)));
  const CorrelationMatrix m = correlation_matrix(rs);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(*m.entries[i][i], 1.0);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(*m.entries[i][j], *m.entries[j][i]);
  }
}

TEST(CorrelationMatrix, ConstantDimensionIsUndefined) {
  std::vector<AnnotationRecord> rs = {rec("a", ScoreVector(1, 3, 2, 4, 3)),
                                      rec("b", ScoreVector(2, 3, 4, 1, 3)),
                                      rec("c", ScoreVector(5, 3, 1, 2, 3))};
  const CorrelationMatrix m = correlation_matrix(rs);
  EXPECT_FALSE(m.entries[0][1].has_value());
  EXPECT_EQ(m.undefined_entries, 3u);
  EXPECT_THROW(correlation_matrix(std::vector<AnnotationRecord>{rs[0]}), Error);
}

TEST(WeakestLink, Examples) {
  const std::vector<AnnotationRecord> rs = {
      rec("a", ScoreVector(3.5, 4.0, 2.5, 3.2, 3)),  // Text
      rec("b", ScoreVector(3.0, 3.0, 3.0, 3.0, 1)),  // not flagged: strict <
      rec("c", ScoreVector(2.0, 4.0, 2.0, 4.0, 3)),  // tie Object/Text -> Object
  };
  const WeakestLinkReport w = weakest_link(rs);
  EXPECT_EQ(w.total, 3u);
  EXPECT_EQ(w.flagged, 2u);
  EXPECT_EQ(w.counts[index_of(Dimension::kText)], 1u);
  EXPECT_EQ(w.counts[index_of(Dimension::kObject)], 1u);
  EXPECT_EQ(w.tied_records, 1u);
  EXPECT_EQ(w.tie_participation[index_of(Dimension::kObject)], 1u);
  EXPECT_EQ(w.tie_participation[index_of(Dimension::kText)], 1u);
  EXPECT_NEAR(w.percentages[0] + w.percentages[1] + w.percentages[2] + w.percentages[3], 100.0,
              1e-9);
}

TEST(WeakestLink, EmptyFlagSet) {
  const WeakestLinkReport w = weakest_link(std::vector<AnnotationRecord>{rec("a", ScoreVector(4, 4, 4, 4, 4))});
  EXPECT_EQ(w.flagged, 0u);
  for (double p : w.percentages) EXPECT_EQ(p, 0.0);
}

TEST(WeakestLink, PlantedRateRecovered) {
  std::mt19937_64 rng(8);
  const auto rs = fixtures::planted_bottleneck(20000, 0.448, 0.6, rng);
  const WeakestLinkReport w = weakest_link(rs);
  EXPECT_NEAR(w.percentages[index_of(Dimension::kText)], 44.8, 1.5);
}

TEST(ScoreDistribution, Examples) {
  std::vector<AnnotationRecord> same(5, rec("x", ScoreVector(3, 3, 3, 3, 3)));
  const DistributionSummary s = score_distribution(same, Dimension::kOverall, 8);
  EXPECT_EQ(std::count_if(s.counts.begin(), s.counts.end(), [](auto c) { return c > 0; }), 1);
  EXPECT_EQ(s.stddev, 0.0);

  const std::vector<AnnotationRecord> two = {rec("a", ScoreVector(3, 3, 3, 3, 2.0)),
                                             rec("b", ScoreVector(3, 3, 3, 3, 4.5))};
  const DistributionSummary t = score_distribution(two, Dimension::kOverall, 8);
  EXPECT_EQ(std::count_if(t.counts.begin(), t.counts.end(), [](auto c) { return c > 0; }), 2);

  const std::vector<AnnotationRecord> top = {rec("a", ScoreVector(3, 3, 3, 3, 5.0))};
  EXPECT_EQ(score_distribution(top, Dimension::kOverall, 8).counts.back(), 1u);
}

TEST(ScoreDistribution, UniformBins) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(1.0, 5.0);
  std::vector<AnnotationRecord> rs;
  for (int i = 0; i < 80000; ++i) rs.push_back(rec("", ScoreVector(3, 3, 3, 3, u(rng))));
  const DistributionSummary s = score_distribution(rs, Dimension::kOverall, 8);
  for (auto c : s.counts) EXPECT_NEAR(100.0 * static_cast<double>(c) / 80000.0, 12.5, 1.0);
}

TEST(CotEditRate, Examples) {
  EXPECT_EQ(cot_edit_rate("文案很清楚", "文案很清楚"), 0.0);
  std::string original(100, 'a');
  std::string edited = original;
  for (int i = 0; i < 32; ++i) edited[static_cast<std::size_t>(i * 3)] = 'b';
  EXPECT_NEAR(cot_edit_rate(original, edited), 32.0, 1e-9);
  EXPECT_NEAR(cot_edit_rate("ab", "abcdef"), 200.0, 1e-9);
  EXPECT_THROW(cot_edit_rate("", "x"), Error);
}

TEST(SourceMeans, Examples) {
  const std::vector<AnnotationRecord> one = {rec("a", ScoreVector(1, 2, 3, 4, 5))};
  const SourceMeans m = per_source_means(one);
  EXPECT_EQ((*m.means[0])[4], 5.0);
  EXPECT_EQ(m.missing_sources.size(), 5u);

  const std::vector<AnnotationRecord> two = {rec("a", ScoreVector(3, 3, 3, 3, 2.0)),
                                             rec("b", ScoreVector(3, 3, 3, 3, 4.0))};
  EXPECT_EQ((*per_source_means(two).means[0])[4], 3.0);
}

TEST(SourceMeans, GroupByOracle) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> src(0, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<AnnotationRecord> rs;
    for (int i = 0; i < 200; ++i) {
      rs.push_back(rec("r", fixtures::grid_vector(rng), kAllSources[static_cast<std::size_t>(src(rng))]));
    }
    std::map<int, std::pair<std::array<long double, 5>, int>> acc;
    for (const auto& r : rs) {
      auto& [sum, n] = acc[static_cast<int>(r.source)];
      for (std::size_t d = 0; d < 5; ++d) sum[d] += r.scores.values()[d];
      ++n;
    }
    const SourceMeans m = per_source_means(rs);
    for (std::size_t s = 0; s < 6; ++s) {
      const auto it = acc.find(static_cast<int>(s));
      if (it == acc.end()) {
        EXPECT_FALSE(m.means[s].has_value());
        continue;
      }
      EXPECT_EQ(m.counts[s], static_cast<std::size_t>(it->second.second));
      for (std::size_t d = 0; d < 5; ++d) {
        EXPECT_NEAR((*m.means[s])[d],
                    static_cast<double>(it->second.first[d] / it->second.second), 1e-9);
      }
    }
  }
}

TEST(Csv, Emitters) {
  const std::vector<AnnotationRecord> rs = {rec("a", ScoreVector(1, 2, 3, 4, 5)),
                                            rec("b", ScoreVector(2, 1, 4, 3, 4))};
  EXPECT_NE(correlation_csv(correlation_matrix(rs)).find("object"), std::string::npos);
  EXPECT_NE(weakest_link_csv(weakest_link(rs)).find("text"), std::string::npos);
  EXPECT_NE(source_means_csv(per_source_means(rs)).find("merchant_hq"), std::string::npos);
  const std::string d = distribution_csv(score_distribution(rs, Dimension::kText, 4));
  EXPECT_EQ(std::count(d.begin(), d.end(), '\n'), 5);
}

}  // namespace
}  // namespace posterq
