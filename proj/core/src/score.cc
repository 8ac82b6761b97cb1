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

#include "posterq/score.h"

#include <cmath>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "posterq/error.h"

namespace posterq {

namespace {

constexpr std::array<std::string_view, kNumDimensions> kDimensionNames = {
    "object", "background", "text", "layout", "overall"};

constexpr std::array<std::string_view, kNumSources> kSourceNames = {
    "merchant_hq", "merchant_lq", "open_source",
    "ai_generated", "ai_edited", "professional"};

}  // namespace

std::string_view dimension_name(Dimension dim) {
  return kDimensionNames[index_of(dim)];
}

std::optional<Dimension> dimension_from_name(std::string_view name) {
  for (Dimension dim : kAllDimensions) {
    if (dimension_name(dim) == name) return dim;
  }
  return std::nullopt;
}

Score::Score(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kNotFinite, "score is not finite");
  }
  if (value < kMinScore || value > kMaxScore) {
    std::ostringstream msg;
    msg << "score " << value << " outside [1, 5]";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
}

Score parse_score(double raw) { return Score(raw); }

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::kPoor: return "poor";
    case Tier::kGood: return "good";
    case Tier::kExcellent: return "excellent";
  }
  return "unknown";
}

Tier tier_of(Score score) {
  const double v = score.value();
  if (v >= 4.0) return Tier::kExcellent;
  if (v >= 3.0) return Tier::kGood;
  return Tier::kPoor;
}

ScoreVector::ScoreVector(const std::array<double, kNumDimensions>& values)
    : values_(values) {
  for (std::size_t i = 0; i < kNumDimensions; ++i) {
    try {
      Score{values_[i]};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(kDimensionNames[i]) + ": " + e.what());
    }
  }
}

ScoreVector::ScoreVector(double object, double background, double text,
                         double layout, double overall)
    : ScoreVector(std::array<double, kNumDimensions>{object, background, text,
                                                     layout, overall}) {}

std::array<double, kNumSubDimensions> ScoreVector::sub_vector() const {
  return {values_[0], values_[1], values_[2], values_[3]};
}

std::string_view source_name(SourceKind source) {
  return kSourceNames[index_of(source)];
}

std::optional<SourceKind> source_from_name(std::string_view name) {
  for (SourceKind source : kAllSources) {
    if (source_name(source) == name) return source;
  }
  return std::nullopt;
}

TagTaxonomy::TagTaxonomy(
    std::array<std::set<std::string>, kNumSubDimensions> allowed)
    : allowed_(std::move(allowed)) {}

TagTaxonomy TagTaxonomy::builtin() {
  std::array<std::set<std::string>, kNumSubDimensions> allowed;
  allowed[index_of(Dimension::kObject)] = {
      "illegible_packaging_text", "incomplete_contour", "duplicated_parts",
      "implausible_placement",    "inconsistent_lighting",
      "unreasonable_scale",       "compositing_artifacts"};
  allowed[index_of(Dimension::kBackground)] = {
      "color_clash",          "weak_scene",   "irrelevant_scene",
      "cluttered_background", "ai_artifacts", "broken_body_parts",
      "compositing_artifacts"};
  allowed[index_of(Dimension::kText)] = {
      "bad_line_breaks", "irrelevant_content", "style_mismatch",
      "stroke_errors",   "typos",              "missing_text",
      "font_too_large",  "font_too_small",     "overlapping_text",
      "redundant_text"};
  allowed[index_of(Dimension::kLayout)] = {
      "crowded_layout", "excessive_empty_space", "unbalanced_composition",
      "occluded_elements"};
  return TagTaxonomy(std::move(allowed));
}

bool TagTaxonomy::allows(Dimension dim, std::string_view tag) const {
  if (dim == Dimension::kOverall) return false;
  if (tag.starts_with(kOtherTagPrefix) && tag.size() > kOtherTagPrefix.size()) {
    return true;
  }
  return allowed_[index_of(dim)].contains(std::string(tag));
}

void TagTaxonomy::validate(const AnnotationRecord& record) const {
  for (Dimension dim : kSubDimensions) {
    for (const std::string& tag : record.tags[index_of(dim)]) {
      if (!allows(dim, tag)) {
        throw Error(ErrorCode::kUnknownTag,
                    "record '" + record.id + "' has tag '" + tag +
                        "' not in the " + std::string(dimension_name(dim)) +
                        " checklist");
      }
    }
  }
}

void check_unique_ids(const std::vector<AnnotationRecord>& records) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(records.size());
  for (const AnnotationRecord& r : records) {
    if (r.id.empty()) throw Error(ErrorCode::kSchemaError, "empty record id");
    if (!seen.insert(r.id).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate id '" + r.id + "'");
    }
  }
}

}  // namespace posterq
