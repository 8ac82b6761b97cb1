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

// Evaluation and benchmark report assembly. Reports are built as ordered JSON
// documents whose "display" blocks hold the exact strings the table
// renderers print, so every rendered number also appears in the JSON.
//
// Display precision: correlations 3 decimals, percentages 1 decimal,
// benchmark scores and similarity metrics 2 decimals.

#ifndef POSTERQ_TOOLS_CLI_REPORT_H_
#define POSTERQ_TOOLS_CLI_REPORT_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.h"
#include "posterq/fidelity.h"
#include "posterq/io.h"
#include "posterq/score.h"

namespace posterq::cli {

struct InputDigest {
  std::string role;
  std::string path;
  std::string sha256;
};

// An input row that could not be used, with the reason.
struct ReportException {
  std::string model;
  std::string id;
  std::string reason;
};

// A score vector for one item (`id`) produced by one model.
struct ScoredSample {
  std::string model;
  std::string id;
  ScoreVector scores;
};

struct ScoredSamples {
  std::vector<ScoredSample> samples;
  std::vector<ReportException> exceptions;
};

// Reads rows {id | case_id, model?, scores?}. Rows without usable scores,
// duplicates, and malformed lines become exceptions. A missing model
// defaults to `default_model`.
ScoredSamples collect_scored(std::span<const JsonlLine> lines,
                             const std::string& default_model);

// Display formatting; empty optionals render as "n/a".
std::string fmt_corr(std::optional<double> v);
std::string fmt_pct(std::optional<double> v);
std::string fmt_2dp(std::optional<double> v);

struct DimensionEval {
  std::size_t n = 0;
  std::optional<double> plcc;
  std::optional<double> srcc;
  std::vector<std::optional<double>> acc;  // parallel to ToolConfig::k_values
  std::vector<std::string> degenerate;     // e.g. "plcc: DegenerateSeries"
};

struct ModelEval {
  std::string model;
  std::size_t n = 0;
  std::array<DimensionEval, kNumDimensions> dims;
};

struct EvalReport {
  std::string config_hash;
  std::vector<InputDigest> inputs;
  std::vector<ModelEval> models;  // ascending model name
  std::vector<ReportException> exceptions;
  std::vector<double> k_values;
};

// Aligns predictions with ground truth by id and computes per-model,
// per-dimension PLCC/SRCC/Acc@k. Work fans out over (model, dimension)
// pairs; the result does not depend on `threads`.
EvalReport evaluate(const ScoredSamples& predictions,
                    std::span<const AnnotationRecord> ground_truth,
                    const ToolConfig& cfg, std::vector<InputDigest> inputs,
                    int threads);

OrderedJson eval_report_to_json(const EvalReport& report);
// Renderers read only the "display" blocks of the JSON report.
std::string render_eval_markdown(const OrderedJson& report);
std::string render_eval_csv(const OrderedJson& report);

struct TextCase {
  std::string case_id;
  std::string model;
  std::vector<std::string> gt_phrases;
  std::vector<std::string> pred_phrases;
  std::string gt_text;
  std::string pred_text;
};

TextCase text_case_from_json(const Json& j);

// {"models": {m: {...means}}, "cases": [...]} with cases sorted by
// (model, case_id).
OrderedJson text_metrics_report(std::span<const TextCase> cases);

OrderedJson fidelity_report(std::span<const FeatureRecord> records);

struct BenchInputs {
  std::optional<std::vector<ScoredSample>> human;
  std::optional<std::vector<ScoredSample>> evaluator;
  std::optional<std::vector<TextCase>> text;
  std::optional<std::vector<FeatureRecord>> fidelity;
  std::vector<ReportException> exceptions;
};

// One merged document per model (keyed by model name). Blocks absent from
// the inputs are omitted, never filled in.
std::map<std::string, OrderedJson> build_bench_report(
    const BenchInputs& inputs, const ToolConfig& cfg,
    const std::vector<InputDigest>& digests);

OrderedJson bench_summary(const std::map<std::string, OrderedJson>& per_model);
std::string render_bench_markdown(const std::map<std::string, OrderedJson>& per_model);
std::string render_bench_csv(const std::map<std::string, OrderedJson>& per_model);

// Filesystem-safe stem for a model name.
std::string model_file_stem(const std::string& model);

}  // namespace posterq::cli

#endif  // POSTERQ_TOOLS_CLI_REPORT_H_
