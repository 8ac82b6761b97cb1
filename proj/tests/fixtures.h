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

// Random generators shared by the unit, property and acceptance tests.

#ifndef POSTERQ_TESTS_FIXTURES_H_
#define POSTERQ_TESTS_FIXTURES_H_

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "posterq/output_parser.h"
#include "posterq/score.h"

namespace fixtures {

using posterq::ScoreVector;

// Uniform score on the 0.1 annotation grid.
inline double grid_score(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(10, 50)(rng) / 10.0;
}

// Uniform real score in [1, 5].
inline double real_score(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(1.0, 5.0)(rng);
}

inline ScoreVector grid_vector(std::mt19937_64& rng) {
  return ScoreVector(grid_score(rng), grid_score(rng), grid_score(rng), grid_score(rng),
                     grid_score(rng));
}

inline ScoreVector real_vector(std::mt19937_64& rng) {
  return ScoreVector(real_score(rng), real_score(rng), real_score(rng), real_score(rng),
                     real_score(rng));
}

inline std::string conformant_output(const ScoreVector& v, const std::string& why) {
  return "<think>" + why + "</think>\n<answer>" + posterq::format_answer(v) + "</answer>";
}

enum class Mutation { kTruncated, kMalformedJson, kMissingKey, kOutOfRange };

inline posterq::Verdict expected_verdict(Mutation m) {
  switch (m) {
    case Mutation::kTruncated: return posterq::Verdict::kInvalidStructure;
    case Mutation::kMalformedJson: return posterq::Verdict::kInvalidJson;
    case Mutation::kMissingKey: return posterq::Verdict::kInvalidSchema;
    case Mutation::kOutOfRange: return posterq::Verdict::kOutOfRangeScore;
  }
  return posterq::Verdict::kValid;
}

// Applies one mutation class to a conformant output for `v`.
inline std::string mutate(const ScoreVector& v, Mutation m, std::mt19937_64& rng) {
  const std::string answer = posterq::format_answer(v);
  const std::string think = "<think>ok</think>";
  switch (m) {
    case Mutation::kTruncated: {
      // Cut somewhere before the closing tag is complete.
      const std::string full = think + "<answer>" + answer + "</answer>";
      const std::size_t cut = std::uniform_int_distribution<std::size_t>(
          0, full.size() - 2)(rng);
      return full.substr(0, cut);
    }
    case Mutation::kMalformedJson: {
      std::string broken = answer;
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: broken.pop_back(); break;                      // missing brace
        case 1: broken.insert(1, ","); break;                   // leading comma
        default: broken.replace(broken.find(':'), 1, " "); break;  // missing colon
      }
      return think + "<answer>" + broken + "</answer>";
    }
    case Mutation::kMissingKey: {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(answer);
      const char* keys[] = {"object", "background", "text", "layout", "overall"};
      j.erase(keys[std::uniform_int_distribution<int>(0, 4)(rng)]);
      return think + "<answer>" + j.dump() + "</answer>";
    }
    case Mutation::kOutOfRange: {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(answer);
      const char* keys[] = {"object", "background", "text", "layout", "overall"};
      const double bad = std::bernoulli_distribution(0.5)(rng)
                             ? std::uniform_real_distribution<double>(5.01, 10.0)(rng)
                             : std::uniform_real_distribution<double>(-3.0, 0.99)(rng);
      j[keys[std::uniform_int_distribution<int>(0, 4)(rng)]] = bad;
      return think + "<answer>" + j.dump() + "</answer>";
    }
  }
  return answer;
}

// Records whose flagged subset has Text as the unique weakest sub-dimension
// with probability `text_rate`; other flagged records get a unique minimum in
// one of the remaining three dimensions. Unflagged records have every
// sub-score >= 3.
inline std::vector<posterq::AnnotationRecord> planted_bottleneck(
    std::size_t n, double text_rate, double flag_rate, std::mt19937_64& rng) {
  std::vector<posterq::AnnotationRecord> out;
  std::uniform_int_distribution<int> high(30, 50), low(10, 25), other(0, 2);
  std::bernoulli_distribution flag(flag_rate), text(text_rate);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 5> v{};
    for (double& x : v) x = high(rng) / 10.0;
    if (flag(rng)) {
      static constexpr std::size_t kNonText[] = {0, 1, 3};
      const std::size_t dim = text(rng) ? 2 : kNonText[other(rng)];
      v[dim] = low(rng) / 10.0;
    }
    posterq::AnnotationRecord r;
    r.id = "p" + std::to_string(i);
    r.scores = ScoreVector(v);
    out.push_back(std::move(r));
  }
  return out;
}

// Every record flagged; exactly `text_count` of them, at shuffled positions,
// have Text as the unique weakest sub-dimension.
inline std::vector<posterq::AnnotationRecord> planted_bottleneck_exact(
    std::size_t n, std::size_t text_count, std::mt19937_64& rng) {
  std::vector<bool> is_text(n, false);
  std::fill(is_text.begin(), is_text.begin() + static_cast<std::ptrdiff_t>(text_count), true);
  std::shuffle(is_text.begin(), is_text.end(), rng);
  std::uniform_int_distribution<int> high(30, 50), low(10, 25), other(0, 2);
  std::vector<posterq::AnnotationRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 5> v{};
    for (double& x : v) x = high(rng) / 10.0;
    static constexpr std::size_t kNonText[] = {0, 1, 3};
    v[is_text[i] ? 2 : kNonText[other(rng)]] = low(rng) / 10.0;
    posterq::AnnotationRecord r;
    r.id = "q" + std::to_string(i);
    r.scores = ScoreVector(v);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fixtures

#endif  // POSTERQ_TESTS_FIXTURES_H_
