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

// Parsing of evaluator generations of the form
//
//   <think> free-form rationale </think>
//   <answer>{"object": 4.0, "background": 3.5, "text": 2.0,
//            "layout": 4.5, "overall": 3.5}</answer>
//
// into validated score vectors. Only the first <think> and the first
// <answer> block are considered. Score keys match case-insensitively after
// trimming, extra keys are ignored, and every score must be a JSON number in
// [1, 5]; quoted numbers are rejected.

#ifndef POSTERQ_OUTPUT_PARSER_H_
#define POSTERQ_OUTPUT_PARSER_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "posterq/error.h"
#include "posterq/score.h"

namespace posterq {

enum class Verdict {
  kValid,
  kInvalidStructure,  // no well-delimited <answer> block
  kInvalidJson,       // answer body is not parseable JSON
  kInvalidSchema,     // not an object, missing/ambiguous/non-numeric keys
  kOutOfRangeScore,   // a score is non-finite or outside [1, 5]
};

std::string_view verdict_name(Verdict verdict);
std::optional<Verdict> verdict_from_name(std::string_view name);

struct ModelOutput {
  std::string raw;
  std::optional<std::string> think;
  std::optional<nlohmann::json> answer_json;
  std::optional<ScoreVector> scores;
  Verdict verdict = Verdict::kInvalidStructure;

  bool valid() const { return verdict == Verdict::kValid; }
};

// Never throws on malformed input; every failure is encoded in `verdict`.
ModelOutput parse_output(std::string_view raw);

struct RetryPolicy {
  int max_attempts = 3;

  // Throws Error(kConfigError) if max_attempts < 1.
  void validate() const;
};

struct AttemptResult {
  ModelOutput output;
  int attempts_used = 0;
};

// Raised when the generator itself fails; records how many attempts had been
// made, including the failing one.
class GeneratorError : public Error {
 public:
  GeneratorError(int attempts_used, const std::string& message)
      : Error(ErrorCode::kGeneratorError, message),
        attempts_used_(attempts_used) {}

  int attempts_used() const noexcept { return attempts_used_; }

 private:
  int attempts_used_;
};

using Generator = std::function<std::string()>;

// Calls `generator` until it yields a Valid output or the policy is
// exhausted. On exhaustion returns the last invalid output with
// attempts_used == max_attempts.
AttemptResult attempt_parse(const Generator& generator,
                            const RetryPolicy& policy = {});

// Canonical rendering of a score vector as an answer object, used by
// fixtures and round-trip checks.
std::string format_answer(const ScoreVector& scores);

}  // namespace posterq

#endif  // POSTERQ_OUTPUT_PARSER_H_
