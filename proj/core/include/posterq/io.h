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

// JSON / JSON Lines mapping for the core types.
//
// Annotation rows look like
//   {"id": "p-001", "source": "merchant_hq",
//    "scores": {"object": 4.2, "background": 3.0, "text": 2.5,
//               "layout": 3.8, "overall": 3.4},
//    "tags": {"text": ["font_too_small"]}, "cot": "..."}

#ifndef POSTERQ_IO_H_
#define POSTERQ_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "posterq/fidelity.h"
#include "posterq/reward.h"
#include "posterq/score.h"

namespace posterq {

using Json = nlohmann::json;
// Insertion-ordered JSON, used for every emitted document.
using OrderedJson = nlohmann::ordered_json;

enum class ScorePrecision {
  kOneDecimal,  // annotation protocol granularity
  kFull,
};

// Reads a whole file; Error kIoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
// Creates parent directories as needed; Error kIoError on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

struct JsonlLine {
  std::size_t line_no = 0;  // 1-based
  std::optional<Json> value;  // empty when the line failed to parse
  std::string error;
};

// Splits on '\n', skipping blank lines. Never throws on bad lines.
std::vector<JsonlLine> parse_jsonl(std::string_view text);

// Like parse_jsonl but any malformed line raises Error(kSchemaError) that
// names `source_name` and the line number.
std::vector<Json> parse_jsonl_strict(std::string_view text,
                                     std::string_view source_name);

// Requires an object with numeric keys object/background/text/layout/overall.
ScoreVector score_vector_from_json(const Json& j);
OrderedJson score_vector_to_json(const ScoreVector& v,
                                 ScorePrecision precision = ScorePrecision::kFull);

// Rounds half away from zero to one decimal.
double round_one_decimal(double v);

AnnotationRecord record_from_json(const Json& j);
// Scores are written with one decimal place.
OrderedJson record_to_json(const AnnotationRecord& record);

// Parses, checks id uniqueness, and validates tags when a taxonomy is given.
std::vector<AnnotationRecord> parse_annotations(std::string_view jsonl,
                                                std::string_view source_name,
                                                const TagTaxonomy* taxonomy = nullptr);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const TagTaxonomy* taxonomy = nullptr);

// {"object": [...], "background": [...], "text": [...], "layout": [...]}
TagTaxonomy taxonomy_from_json(const Json& j);
OrderedJson taxonomy_to_json(const TagTaxonomy& taxonomy);

// Unknown keys are a config error; absent keys keep their defaults.
RewardConfig reward_config_from_json(const Json& j);
OrderedJson reward_config_to_json(const RewardConfig& cfg);

FeatureRecord feature_record_from_json(const Json& j);

}  // namespace posterq

#endif  // POSTERQ_IO_H_
