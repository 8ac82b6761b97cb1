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

#include "posterq/io.h"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "posterq/error.h"

namespace posterq {
namespace {

[[noreturn]] void schema_error(const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, msg);
}

const Json& require(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) schema_error(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> number_array(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) schema_error(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) {
    if (!x.is_number()) schema_error(std::string("'") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read '" + path.string() + "'");
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

std::vector<JsonlLine> parse_jsonl(std::string_view text) {
  std::vector<JsonlLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    JsonlLine entry;
    entry.line_no = line_no;
    Json parsed = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      entry.error = "malformed JSON";
    } else {
      entry.value = std::move(parsed);
    }
    lines.push_back(std::move(entry));
    if (end == text.size()) break;
  }
  return lines;
}

std::vector<Json> parse_jsonl_strict(std::string_view text,
                                     std::string_view source_name) {
  std::vector<Json> out;
  for (JsonlLine& line : parse_jsonl(text)) {
    if (!line.value) {
      schema_error(std::string(source_name) + ":" + std::to_string(line.line_no) +
                   ": " + line.error);
    }
    out.push_back(std::move(*line.value));
  }
  return out;
}

ScoreVector score_vector_from_json(const Json& j) {
  if (!j.is_object()) schema_error("scores must be an object");
  std::array<double, kNumDimensions> values{};
  for (Dimension dim : kAllDimensions) {
    const std::string name(dimension_name(dim));
    const Json& v = require(j, name.c_str());
    if (!v.is_number()) schema_error("score '" + name + "' must be a number");
    values[index_of(dim)] = v.get<double>();
  }
  return ScoreVector(values);
}

double round_one_decimal(double v) { return std::round(v * 10.0) / 10.0; }

OrderedJson score_vector_to_json(const ScoreVector& v, ScorePrecision precision) {
  OrderedJson j = OrderedJson::object();
  for (Dimension dim : kAllDimensions) {
    const double x = v.value(dim);
    j[std::string(dimension_name(dim))] =
        precision == ScorePrecision::kOneDecimal ? round_one_decimal(x) : x;
  }
  return j;
}

AnnotationRecord record_from_json(const Json& j) {
  if (!j.is_object()) schema_error("annotation row must be an object");
  AnnotationRecord r;
  r.id = require_string(j, "id");
  if (r.id.empty()) schema_error("'id' must be non-empty");
  const std::string source = require_string(j, "source");
  const auto kind = source_from_name(source);
  if (!kind) schema_error("unknown source '" + source + "'");
  r.source = *kind;
  try {
    r.scores = score_vector_from_json(require(j, "scores"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaError) throw;
    throw Error(e.code(), "record '" + r.id + "': " + e.what());
  }
  if (const auto it = j.find("tags"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) schema_error("'tags' must be an object");
    for (const auto& [key, list] : it->items()) {
      const auto dim = dimension_from_name(key);
      if (!dim || *dim == Dimension::kOverall) {
        schema_error("unknown tag dimension '" + key + "'");
      }
      if (!list.is_array()) schema_error("tags for '" + key + "' must be an array");
      for (const Json& tag : list) {
        if (!tag.is_string()) schema_error("tags must be strings");
        r.tags[index_of(*dim)].push_back(tag.get<std::string>());
      }
    }
  }
  if (const auto it = j.find("cot"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) schema_error("'cot' must be a string");
    r.cot = it->get<std::string>();
  }
  return r;
}

OrderedJson record_to_json(const AnnotationRecord& record) {
  OrderedJson j;
  j["id"] = record.id;
  j["source"] = std::string(source_name(record.source));
  j["scores"] = score_vector_to_json(record.scores, ScorePrecision::kOneDecimal);
  OrderedJson tags = OrderedJson::object();
  for (Dimension dim : kSubDimensions) {
    tags[std::string(dimension_name(dim))] = record.tags[index_of(dim)];
  }
  j["tags"] = std::move(tags);
  if (record.cot) j["cot"] = *record.cot;
  return j;
}

std::vector<AnnotationRecord> parse_annotations(std::string_view jsonl,
                                                std::string_view source_name,
                                                const TagTaxonomy* taxonomy) {
  std::vector<AnnotationRecord> records;
  for (const JsonlLine& line : parse_jsonl(jsonl)) {
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line.line_no);
    if (!line.value) schema_error(where + ": " + line.error);
    try {
      records.push_back(record_from_json(*line.value));
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.what());
    }
    if (taxonomy) taxonomy->validate(records.back());
  }
  check_unique_ids(records);
  return records;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const TagTaxonomy* taxonomy) {
  return parse_annotations(read_file(path), path.string(), taxonomy);
}

TagTaxonomy taxonomy_from_json(const Json& j) {
  if (!j.is_object()) schema_error("taxonomy must be an object");
  std::array<std::set<std::string>, kNumSubDimensions> allowed;
  for (const auto& [key, list] : j.items()) {
    const auto dim = dimension_from_name(key);
    if (!dim || *dim == Dimension::kOverall) {
      schema_error("unknown taxonomy dimension '" + key + "'");
    }
    if (!list.is_array()) schema_error("taxonomy lists must be arrays");
    for (const Json& tag : list) {
      if (!tag.is_string()) schema_error("taxonomy tags must be strings");
      allowed[index_of(*dim)].insert(tag.get<std::string>());
    }
  }
  return TagTaxonomy(std::move(allowed));
}

OrderedJson taxonomy_to_json(const TagTaxonomy& taxonomy) {
  OrderedJson j = OrderedJson::object();
  for (Dimension dim : kSubDimensions) {
    j[std::string(dimension_name(dim))] = taxonomy.tags(dim);
  }
  return j;
}

RewardConfig reward_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "reward config must be an object");
  RewardConfig cfg;
  for (const auto& [key, value] : j.items()) {
    auto number = [&]() {
      if (!value.is_number()) {
        throw Error(ErrorCode::kConfigError, "'" + key + "' must be a number");
      }
      return value.get<double>();
    };
    if (key == "tau") {
      cfg.tau = number();
    } else if (key == "lambda_score") {
      cfg.lambda_score = number();
    } else if (key == "alpha") {
      cfg.alpha = number();
    } else if (key == "tier_penalty") {
      cfg.tier_penalty = number();
    } else if (key == "lambda_fmt") {
      cfg.lambda_fmt = number();
    } else if (key == "group_size") {
      if (!value.is_number_integer()) {
        throw Error(ErrorCode::kConfigError, "'group_size' must be an integer");
      }
      cfg.group_size = value.get<int>();
    } else if (key == "advantage_epsilon") {
      cfg.advantage_epsilon = number();
    } else {
      throw Error(ErrorCode::kConfigError, "unknown reward config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

OrderedJson reward_config_to_json(const RewardConfig& cfg) {
  OrderedJson j;
  j["tau"] = cfg.tau;
  j["lambda_score"] = cfg.lambda_score;
  j["alpha"] = cfg.alpha;
  j["tier_penalty"] = cfg.tier_penalty;
  j["lambda_fmt"] = cfg.lambda_fmt;
  j["group_size"] = cfg.group_size;
  j["advantage_epsilon"] = cfg.advantage_epsilon;
  return j;
}

FeatureRecord feature_record_from_json(const Json& j) {
  if (!j.is_object()) schema_error("feature row must be an object");
  FeatureRecord r;
  r.case_id = require_string(j, "case_id");
  r.model = require_string(j, "model");
  r.dino_ref = number_array(j, "dino_ref");
  r.dino_gen = number_array(j, "dino_gen");
  r.clip_ref = number_array(j, "clip_ref");
  r.clip_gen = number_array(j, "clip_gen");
  if (r.dino_ref.size() != r.dino_gen.size() || r.dino_ref.empty()) {
    schema_error("case '" + r.case_id + "': dino vectors differ in length or are empty");
  }
  if (r.clip_ref.size() != r.clip_gen.size() || r.clip_ref.empty()) {
    schema_error("case '" + r.case_id + "': clip vectors differ in length or are empty");
  }
  if (const auto it = j.find("lpips"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) schema_error("'lpips' must be a number");
    r.lpips = it->get<double>();
    if (!std::isfinite(*r.lpips) || *r.lpips < 0.0) {
      schema_error("case '" + r.case_id + "': lpips must be finite and >= 0");
    }
  }
  return r;
}

}  // namespace posterq
