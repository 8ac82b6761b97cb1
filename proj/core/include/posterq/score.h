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

// Score, tier and dimension domain model shared by every other module.

#ifndef POSTERQ_SCORE_H_
#define POSTERQ_SCORE_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace posterq {

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 5.0;

// Absolute slack applied to inclusive "<= threshold" comparisons on score
// differences, so 3.1 - 2.9 counts as within 0.2.
inline constexpr double kBoundaryTolerance = 1e-9;

// Canonical order is fixed: the four sub-dimensions first, Overall last.
enum class Dimension { kObject = 0, kBackground, kText, kLayout, kOverall };

inline constexpr std::size_t kNumDimensions = 5;
inline constexpr std::size_t kNumSubDimensions = 4;

inline constexpr std::array<Dimension, kNumDimensions> kAllDimensions = {
    Dimension::kObject, Dimension::kBackground, Dimension::kText,
    Dimension::kLayout, Dimension::kOverall};
inline constexpr std::array<Dimension, kNumSubDimensions> kSubDimensions = {
    Dimension::kObject, Dimension::kBackground, Dimension::kText,
    Dimension::kLayout};

// Lowercase serialization key ("object", "background", ...).
std::string_view dimension_name(Dimension dim);
std::optional<Dimension> dimension_from_name(std::string_view name);

constexpr std::size_t index_of(Dimension dim) {
  return static_cast<std::size_t>(dim);
}

// A quality score on the closed [1, 5] scale. Never clamps.
class Score {
 public:
  // Throws Error(kNotFinite) for NaN/inf and Error(kOutOfRange) outside [1, 5].
  explicit Score(double value);

  double value() const noexcept { return value_; }

  friend bool operator==(Score, Score) = default;
  friend auto operator<=>(Score, Score) = default;

 private:
  double value_;
};

Score parse_score(double raw);

// Ordered Poor < Good < Excellent.
enum class Tier { kPoor = 0, kGood = 1, kExcellent = 2 };

std::string_view tier_name(Tier tier);

// Excellent [4, 5], Good [3, 4), Poor [1, 3).
Tier tier_of(Score score);

class ScoreVector {
 public:
  // Validates every entry; values are in canonical dimension order.
  explicit ScoreVector(const std::array<double, kNumDimensions>& values);
  ScoreVector(double object, double background, double text, double layout,
              double overall);

  Score operator[](Dimension dim) const { return Score(values_[index_of(dim)]); }
  double value(Dimension dim) const { return values_[index_of(dim)]; }

  const std::array<double, kNumDimensions>& values() const { return values_; }

  // [Object, Background, Text, Layout]; Overall excluded.
  std::array<double, kNumSubDimensions> sub_vector() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;

 private:
  std::array<double, kNumDimensions> values_;
};

enum class SourceKind {
  kMerchantHq = 0,
  kMerchantLq,
  kOpenSource,
  kAiGenerated,
  kAiEdited,
  kProfessional,
};

inline constexpr std::size_t kNumSources = 6;
inline constexpr std::array<SourceKind, kNumSources> kAllSources = {
    SourceKind::kMerchantHq,  SourceKind::kMerchantLq, SourceKind::kOpenSource,
    SourceKind::kAiGenerated, SourceKind::kAiEdited,   SourceKind::kProfessional};

constexpr std::size_t index_of(SourceKind source) {
  return static_cast<std::size_t>(source);
}

// Stable names: merchant_hq, merchant_lq, open_source, ai_generated,
// ai_edited, professional.
std::string_view source_name(SourceKind source);
std::optional<SourceKind> source_from_name(std::string_view name);

// Issue tags per sub-dimension, indexed by index_of(Dimension).
using TagLists = std::array<std::vector<std::string>, kNumSubDimensions>;

struct AnnotationRecord {
  std::string id;
  SourceKind source = SourceKind::kMerchantHq;
  ScoreVector scores{3.0, 3.0, 3.0, 3.0, 3.0};
  TagLists tags;
  std::optional<std::string> cot;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

// Checklist of allowed issue tags per sub-dimension. Tags of the form
// "other:<free text>" are always accepted.
class TagTaxonomy {
 public:
  TagTaxonomy() = default;
  explicit TagTaxonomy(
      std::array<std::set<std::string>, kNumSubDimensions> allowed);

  // The built-in checklist (Background/Object/Text/Layout issue tags).
  static TagTaxonomy builtin();

  bool allows(Dimension dim, std::string_view tag) const;

  // Throws Error(kUnknownTag) naming the first offending tag.
  void validate(const AnnotationRecord& record) const;

  const std::set<std::string>& tags(Dimension dim) const {
    return allowed_[index_of(dim)];
  }

 private:
  std::array<std::set<std::string>, kNumSubDimensions> allowed_;
};

inline constexpr std::string_view kOtherTagPrefix = "other:";

// Throws Error(kDuplicateId) if two records share an id, or Error(kSchemaError)
// for an empty id.
void check_unique_ids(const std::vector<AnnotationRecord>& records);

}  // namespace posterq

#endif  // POSTERQ_SCORE_H_
