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

// Deterministic synthetic fixtures for demos, tests and benchmarks. Every
// file is a pure function of (seed, models, items).

#ifndef POSTERQ_TOOLS_CLI_SYNTH_H_
#define POSTERQ_TOOLS_CLI_SYNTH_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace posterq::cli {

// Portable draws on top of std::mt19937_64, whose output sequence is fixed
// by the standard (the std distributions are not).
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);    // [lo, hi)
  std::size_t index(std::size_t n);        // [0, n)
  double normal(double mean, double sd);   // Box-Muller

 private:
  std::mt19937_64 engine_;
};

// Score on the 0.1 grid, clamped to [1, 5].
double grid_score(double v);

struct SynthSpec {
  std::uint64_t seed = 0;
  int models = 5;
  int items = 40;
};

// File name -> contents:
//   gt.jsonl         annotation records
//   preds.jsonl      {id, model, scores} per model and item
//   raw.jsonl        {id, raw, gt_scores}, some outputs deliberately broken
//   human.jsonl      {case_id, model, scores}
//   evaluator.jsonl  {case_id, model, scores}
//   text.jsonl       {case_id, model, gt_phrases, pred_phrases, gt_text, pred_text}
//   features.jsonl   {case_id, model, dino_ref, dino_gen, clip_ref, clip_gen, lpips}
//   ratings.jsonl    {unit, coder, scores}, with missing cells
//   edits.jsonl      {id, original, edited}
std::map<std::string, std::string> synth_fixture(const SynthSpec& spec);

// Model names used by the fixture: "model-1" ... "model-N".
std::string synth_model_name(int index);

}  // namespace posterq::cli

#endif  // POSTERQ_TOOLS_CLI_SYNTH_H_
