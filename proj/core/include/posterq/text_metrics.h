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

// Text-content accuracy metrics for rendered poster copy. Strings are UTF-8;
// every character-level metric works on Unicode scalar values.

#ifndef POSTERQ_TEXT_METRICS_H_
#define POSTERQ_TEXT_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posterq {

// Decodes UTF-8; each maximal ill-formed subsequence becomes U+FFFD.
std::u32string utf8_to_scalars(std::string_view text);
std::string scalars_to_utf8(std::u32string_view text);

// Drops every character with the Unicode White_Space property.
std::u32string strip_whitespace(std::u32string_view text);

// Unit-cost insertion/deletion/substitution distance.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Phrase normalization: trim, NFC, full case folding.
std::string normalize_phrase(std::string_view phrase);

// Normalized, deduplicated, non-empty phrases in sorted order.
class PhraseSet {
 public:
  PhraseSet() = default;
  explicit PhraseSet(std::span<const std::string> phrases);
  PhraseSet(std::initializer_list<std::string> phrases);

  const std::vector<std::string>& phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }

 private:
  std::vector<std::string> phrases_;
};

struct PhraseScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when both sets are empty; f1 is then 1 by convention.
  bool both_empty = false;
};

PhraseScores phrase_scores(const PhraseSet& gt, const PhraseSet& pred);
double phrase_f1(const PhraseSet& gt, const PhraseSet& pred);

struct TextPair {
  std::string reference;  // prompt copy
  std::string candidate;  // text extracted from the rendered poster
};

// Cosine of whitespace-stripped character-frequency vectors. Both empty: 1,
// exactly one empty: 0.
double bag_of_chars_cosine(const TextPair& pair);

// 1 - lev / max(|ref|, |cand|) on whitespace-stripped text; both empty: 1.
double normalized_levenshtein_sim(const TextPair& pair);

}  // namespace posterq

#endif  // POSTERQ_TEXT_METRICS_H_
