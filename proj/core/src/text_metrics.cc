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

#include "posterq/text_metrics.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "posterq/error.h"

namespace posterq {

std::u32string utf8_to_scalars(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT_OR_FFFD(s, i, length, c);
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string scalars_to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
    }
  }
  return out;
}

std::u32string strip_whitespace(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (!u_isUWhiteSpace(static_cast<UChar32>(c))) out.push_back(c);
  }
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  // Shared prefix and suffix never contribute edits.
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  // row[j] = distance between the processed prefix of a and b[0, j).
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i + 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t up = row[j + 1];
      const std::size_t sub = diag + (a[i] == b[j] ? 0 : 1);
      row[j + 1] = std::min({up + 1, row[j] + 1, sub});
      diag = up;
    }
  }
  return row.back();
}

std::string normalize_phrase(std::string_view phrase) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "ICU NFC normalizer unavailable");
  }
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(phrase.data(), static_cast<int32_t>(phrase.size())));
  text.trim();
  icu::UnicodeString composed = nfc->normalize(text, status);
  composed.foldCase(U_FOLD_CASE_DEFAULT);
  // Folding can decompose (e.g. U+0130), so recompose once more.
  icu::UnicodeString folded = nfc->normalize(composed, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "phrase normalization failed");
  }
  std::string out;
  folded.toUTF8String(out);
  return out;
}

PhraseSet::PhraseSet(std::span<const std::string> phrases) {
  phrases_.reserve(phrases.size());
  for (const std::string& p : phrases) {
    std::string norm = normalize_phrase(p);
    if (!norm.empty()) phrases_.push_back(std::move(norm));
  }
  std::sort(phrases_.begin(), phrases_.end());
  phrases_.erase(std::unique(phrases_.begin(), phrases_.end()), phrases_.end());
}

PhraseSet::PhraseSet(std::initializer_list<std::string> phrases)
    : PhraseSet(std::span<const std::string>(phrases.begin(), phrases.size())) {}

PhraseScores phrase_scores(const PhraseSet& gt, const PhraseSet& pred) {
  PhraseScores s;
  if (gt.empty() && pred.empty()) {
    s.precision = s.recall = s.f1 = 1.0;
    s.both_empty = true;
    return s;
  }
  std::vector<std::string> common;
  std::set_intersection(gt.phrases().begin(), gt.phrases().end(),
                        pred.phrases().begin(), pred.phrases().end(),
                        std::back_inserter(common));
  const auto matched = static_cast<double>(common.size());
  s.precision = pred.empty() ? 0.0 : matched / static_cast<double>(pred.size());
  s.recall = gt.empty() ? 0.0 : matched / static_cast<double>(gt.size());
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

double phrase_f1(const PhraseSet& gt, const PhraseSet& pred) {
  return phrase_scores(gt, pred).f1;
}

double bag_of_chars_cosine(const TextPair& pair) {
  const std::u32string ref = strip_whitespace(utf8_to_scalars(pair.reference));
  const std::u32string cand = strip_whitespace(utf8_to_scalars(pair.candidate));
  if (ref.empty() && cand.empty()) return 1.0;
  if (ref.empty() || cand.empty()) return 0.0;

  std::map<char32_t, std::pair<double, double>> counts;
  for (char32_t c : ref) counts[c].first += 1.0;
  for (char32_t c : cand) counts[c].second += 1.0;
  double dot = 0.0, nr = 0.0, nc = 0.0;
  for (const auto& [c, n] : counts) {
    dot += n.first * n.second;
    nr += n.first * n.first;
    nc += n.second * n.second;
  }
  return std::min(1.0, dot / std::sqrt(nr * nc));
}

double normalized_levenshtein_sim(const TextPair& pair) {
  const std::u32string ref = strip_whitespace(utf8_to_scalars(pair.reference));
  const std::u32string cand = strip_whitespace(utf8_to_scalars(pair.candidate));
  const std::size_t longest = std::max(ref.size(), cand.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(ref, cand)) /
                   static_cast<double>(longest);
}

}  // namespace posterq
