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

#include "posterq/output_parser.h"

#include <array>
#include <cmath>
#include <exception>

namespace posterq {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

struct Span {
  std::size_t begin = 0;  // first byte of the body
  std::size_t end = 0;    // one past the last byte of the body
  std::size_t close_end = 0;  // one past the closing tag
};

std::optional<Span> find_block(std::string_view text, std::string_view open,
                               std::string_view close, std::size_t from) {
  const std::size_t o = text.find(open, from);
  if (o == std::string_view::npos) return std::nullopt;
  const std::size_t body = o + open.size();
  const std::size_t c = text.find(close, body);
  if (c == std::string_view::npos) return std::nullopt;
  return Span{body, c, c + close.size()};
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string normalize_key(std::string_view key) {
  while (!key.empty() && is_space(key.front())) key.remove_prefix(1);
  while (!key.empty() && is_space(key.back())) key.remove_suffix(1);
  std::string out(key);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kValid: return "valid";
    case Verdict::kInvalidStructure: return "invalid_structure";
    case Verdict::kInvalidJson: return "invalid_json";
    case Verdict::kInvalidSchema: return "invalid_schema";
    case Verdict::kOutOfRangeScore: return "out_of_range_score";
  }
  return "unknown";
}

std::optional<Verdict> verdict_from_name(std::string_view name) {
  for (Verdict v : {Verdict::kValid, Verdict::kInvalidStructure,
                    Verdict::kInvalidJson, Verdict::kInvalidSchema,
                    Verdict::kOutOfRangeScore}) {
    if (verdict_name(v) == name) return v;
  }
  return std::nullopt;
}

ModelOutput parse_output(std::string_view raw) {
  ModelOutput out;
  out.raw = std::string(raw);

  const std::optional<Span> think = find_block(raw, kThinkOpen, kThinkClose, 0);
  if (think) out.think = std::string(raw.substr(think->begin, think->end - think->begin));

  // An <answer> tag quoted inside the rationale is not the answer block.
  std::optional<Span> answer = find_block(raw, kAnswerOpen, kAnswerClose, 0);
  if (answer && think && answer->begin > think->begin &&
      answer->begin <= think->end) {
    answer = find_block(raw, kAnswerOpen, kAnswerClose, think->close_end);
  }
  if (!answer) {
    out.verdict = Verdict::kInvalidStructure;
    return out;
  }

  const std::string_view body = raw.substr(answer->begin, answer->end - answer->begin);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  } catch (const std::exception&) {
    parsed = nlohmann::json(nlohmann::json::value_t::discarded);
  }
  if (parsed.is_discarded()) {
    out.verdict = Verdict::kInvalidJson;
    return out;
  }
  out.answer_json = parsed;
  if (!parsed.is_object()) {
    out.verdict = Verdict::kInvalidSchema;
    return out;
  }

  std::array<const nlohmann::json*, kNumDimensions> slots{};
  for (const auto& [key, value] : parsed.items()) {
    const std::optional<Dimension> dim = dimension_from_name(normalize_key(key));
    if (!dim) continue;
    const std::size_t i = index_of(*dim);
    if (slots[i] != nullptr) {
      // Two spellings of one key ("Text" and "text"): ambiguous.
      out.verdict = Verdict::kInvalidSchema;
      return out;
    }
    slots[i] = &value;
  }

  std::array<double, kNumDimensions> values{};
  for (std::size_t i = 0; i < kNumDimensions; ++i) {
    if (slots[i] == nullptr || !slots[i]->is_number()) {
      out.verdict = Verdict::kInvalidSchema;
      return out;
    }
    values[i] = slots[i]->get<double>();
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < kMinScore || v > kMaxScore) {
      out.verdict = Verdict::kOutOfRangeScore;
      return out;
    }
  }
  out.scores = ScoreVector(values);
  out.verdict = Verdict::kValid;
  return out;
}

void RetryPolicy::validate() const {
  if (max_attempts < 1) {
    throw Error(ErrorCode::kConfigError, "max_attempts must be >= 1");
  }
}

AttemptResult attempt_parse(const Generator& generator,
                            const RetryPolicy& policy) {
  policy.validate();
  AttemptResult result;
  for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    std::string text;
    try {
      text = generator();
    } catch (const std::exception& e) {
      throw GeneratorError(attempt, std::string("generator failed on attempt ") +
                                        std::to_string(attempt) + ": " + e.what());
    }
    result.output = parse_output(text);
    result.attempts_used = attempt;
    if (result.output.valid()) break;
  }
  return result;
}

std::string format_answer(const ScoreVector& scores) {
  nlohmann::ordered_json obj;
  for (Dimension dim : kAllDimensions) {
    obj[std::string(dimension_name(dim))] = scores.value(dim);
  }
  return obj.dump();
}

}  // namespace posterq
