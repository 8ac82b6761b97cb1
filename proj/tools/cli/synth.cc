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

#include "cli/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "posterq/io.h"
#include "posterq/output_parser.h"
#include "posterq/score.h"
#include "posterq/text_metrics.h"

namespace posterq::cli {
namespace {

const std::vector<std::string> kPhrases = {
    "限时特惠", "新品上市", "Free Shipping", "买一送一",   "Summer Sale",
    "官方旗舰店", "Best Seller", "包邮",     "满299减50", "New Arrival"};

const std::vector<std::string> kRationale = {
    "The product is sharp and well lit.",
    "Edges around the bottle look slightly cut out.",
    "The background supports the theme.",
    "Some text overlaps the product.",
    "The headline font is too small to read.",
    "Layout is balanced with clear hierarchy.",
    "There is a lot of empty space at the bottom.",
};

std::string line(const OrderedJson& j) { return j.dump() + "\n"; }

ScoreVector jitter(SynthRng& rng, const ScoreVector& base, double sd) {
  std::array<double, kNumDimensions> v{};
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    v[d] = grid_score(base.values()[d] + rng.normal(0.0, sd));
  }
  return ScoreVector(v);
}

std::vector<double> gaussian_vector(SynthRng& rng, std::size_t n, double sd) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal(0.0, sd);
  return v;
}

std::vector<double> perturb(SynthRng& rng, const std::vector<double>& v, double sd) {
  std::vector<double> out = v;
  for (double& x : out) x += rng.normal(0.0, sd);
  return out;
}

std::vector<std::string> pick_phrases(SynthRng& rng, std::size_t count) {
  std::vector<std::string> pool = kPhrases;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count && !pool.empty(); ++i) {
    const std::size_t k = rng.index(pool.size());
    out.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string break_output(SynthRng& rng, const ScoreVector& scores) {
  const std::string think = "<think>Checking each dimension.</think>";
  std::string answer = format_answer(scores);
  switch (rng.index(4)) {
    case 0:  // truncated answer block
      return think + "<answer>" + answer;
    case 1:  // malformed JSON
      answer.pop_back();
      return think + "<answer>" + answer + "</answer>";
    case 2:  // misspelled key
      answer.replace(answer.find("layout"), 6, "layuot");
      return think + "<answer>" + answer + "</answer>";
    default: {  // out-of-range score
      OrderedJson j = OrderedJson::parse(answer);
      j["overall"] = 6.0;
      return think + "<answer>" + j.dump() + "</answer>";
    }
  }
}

}  // namespace

double SynthRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SynthRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t SynthRng::index(std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

double SynthRng::normal(double mean, double sd) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

double grid_score(double v) { return round_one_decimal(std::clamp(v, 1.0, 5.0)); }

std::string synth_model_name(int index) { return "model-" + std::to_string(index); }

std::map<std::string, std::string> synth_fixture(const SynthSpec& spec) {
  SynthRng rng(spec.seed);
  const TagTaxonomy& taxonomy = TagTaxonomy::builtin();
  std::map<std::string, std::string> files;

  std::vector<AnnotationRecord> records;
  std::vector<double> quality;
  for (int i = 0; i < spec.items; ++i) {
    AnnotationRecord r;
    char id[32];
    std::snprintf(id, sizeof id, "item-%04d", i + 1);
    r.id = id;
    r.source = kAllSources[rng.index(kNumSources)];
    const double q = rng.uniform(1.5, 4.8);
    quality.push_back(q);
    std::array<double, kNumDimensions> v{};
    double sum = 0.0;
    for (std::size_t d = 0; d < kNumSubDimensions; ++d) {
      v[d] = grid_score(q + rng.normal(0.0, 0.6));
      sum += v[d];
    }
    v[index_of(Dimension::kOverall)] = grid_score(sum / 4.0 + rng.normal(0.0, 0.2));
    r.scores = ScoreVector(v);
    for (std::size_t d = 0; d < kNumSubDimensions; ++d) {
      if (v[d] >= 3.0) continue;
      const auto& allowed = taxonomy.tags(kSubDimensions[d]);
      const std::vector<std::string> tags(allowed.begin(), allowed.end());
      r.tags[d].push_back(tags[rng.index(tags.size())]);
    }
    if (rng.uniform() < 0.9) {
      r.cot = kRationale[rng.index(kRationale.size())] + " " +
              kRationale[rng.index(kRationale.size())];
    }
    records.push_back(std::move(r));
  }

  std::string gt, preds, raw, human, evaluator, text, features, ratings, edits;
  for (const AnnotationRecord& r : records) gt += line(record_to_json(r));

  for (int m = 1; m <= spec.models; ++m) {
    const std::string model = synth_model_name(m);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const ScoreVector p = jitter(rng, records[i].scores, 0.15 * m);
      preds += line({{"id", records[i].id},
                     {"model", model},
                     {"scores", score_vector_to_json(p, ScorePrecision::kOneDecimal)}});
      if (m == 1) {
        const std::string output =
            rng.uniform() < 0.15
                ? break_output(rng, p)
                : "<think>" + records[i].cot.value_or("Looks fine.") + "</think><answer>" +
                      format_answer(p) + "</answer>";
        raw += line({{"id", records[i].id},
                     {"raw", output},
                     {"gt_scores",
                      score_vector_to_json(records[i].scores, ScorePrecision::kOneDecimal)}});
      }

      // Generated-poster judgments: humans and the evaluator score the same
      // case; evaluator scores track human ones with noise.
      const double shift = 0.1 * (spec.models - m);
      const double q = grid_score(quality[i] + shift);
      const ScoreVector h = jitter(rng, ScoreVector(q, q, q, q, q), 0.5);
      const ScoreVector e = jitter(rng, h, 0.3);
      const std::string case_id = records[i].id;
      human += line({{"case_id", case_id},
                     {"model", model},
                     {"scores", score_vector_to_json(h, ScorePrecision::kOneDecimal)}});
      evaluator += line({{"case_id", case_id},
                         {"model", model},
                         {"scores", score_vector_to_json(e, ScorePrecision::kOneDecimal)}});

      const std::vector<std::string> gt_phrases = pick_phrases(rng, 1 + rng.index(3));
      std::vector<std::string> pred_phrases;
      for (const std::string& p : gt_phrases) {
        if (rng.uniform() < 0.9 - 0.1 * m) pred_phrases.push_back(p);
      }
      if (rng.uniform() < 0.1 * m) pred_phrases.push_back(kPhrases[rng.index(kPhrases.size())]);
      std::string pred_text = join(pred_phrases, " ");
      if (!pred_text.empty() && rng.uniform() < 0.2 * m) {
        std::u32string chars = utf8_to_scalars(pred_text);
        chars.pop_back();  // drop one character, not one byte
        pred_text = scalars_to_utf8(chars);
      }
      text += line({{"case_id", case_id},
                    {"model", model},
                    {"gt_phrases", gt_phrases},
                    {"pred_phrases", pred_phrases},
                    {"gt_text", join(gt_phrases, " ")},
                    {"pred_text", pred_text}});

      const std::vector<double> dino = gaussian_vector(rng, 16, 1.0);
      const std::vector<double> clip = gaussian_vector(rng, 16, 1.0);
      OrderedJson f = {{"case_id", case_id},
                       {"model", model},
                       {"dino_ref", dino},
                       {"dino_gen", perturb(rng, dino, 0.2 * m)},
                       {"clip_ref", clip},
                       {"clip_gen", perturb(rng, clip, 0.15 * m)}};
      if (rng.uniform() < 0.9) f["lpips"] = 0.1 * m + rng.uniform(0.0, 0.1);
      features += line(f);
    }
  }

  for (const AnnotationRecord& r : records) {
    for (int c = 1; c <= 3; ++c) {
      if (rng.uniform() < 0.1) continue;
      const ScoreVector s = jitter(rng, r.scores, 0.4);
      ratings += line({{"unit", r.id},
                       {"coder", "coder-" + std::to_string(c)},
                       {"scores", score_vector_to_json(s, ScorePrecision::kOneDecimal)}});
    }
    if (r.cot) {
      std::string edited = *r.cot;
      const std::size_t changes = rng.index(edited.size() / 3 + 1);
      for (std::size_t k = 0; k < changes; ++k) {
        edited[rng.index(edited.size())] = static_cast<char>('a' + rng.index(26));
      }
      edits += line({{"id", r.id}, {"original", *r.cot}, {"edited", edited}});
    }
  }

  files["gt.jsonl"] = std::move(gt);
  files["preds.jsonl"] = std::move(preds);
  files["raw.jsonl"] = std::move(raw);
  files["human.jsonl"] = std::move(human);
  files["evaluator.jsonl"] = std::move(evaluator);
  files["text.jsonl"] = std::move(text);
  files["features.jsonl"] = std::move(features);
  files["ratings.jsonl"] = std::move(ratings);
  files["edits.jsonl"] = std::move(edits);
  return files;
}

}  // namespace posterq::cli
