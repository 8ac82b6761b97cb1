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

#include "cli/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <unordered_map>

#include "posterq/error.h"
#include "posterq/parallel.h"
#include "posterq/stats.h"
#include "posterq/text_metrics.h"
#include "posterq/version.h"

namespace posterq::cli {
namespace {

constexpr const char* kNa = "n/a";

OrderedJson opt_number(std::optional<double> v) {
  return v ? OrderedJson(*v) : OrderedJson();
}

OrderedJson header(const std::string& config_hash,
                   const std::vector<InputDigest>& inputs) {
  OrderedJson j;
  j["schema_version"] = kReportSchemaVersion;
  j["toolbox_version"] = kVersion;
  j["config_hash"] = config_hash;
  OrderedJson in = OrderedJson::array();
  for (const InputDigest& d : inputs) {
    in.push_back({{"role", d.role}, {"path", d.path}, {"sha256", d.sha256}});
  }
  j["inputs"] = std::move(in);
  return j;
}

OrderedJson exceptions_json(const std::vector<ReportException>& exceptions) {
  OrderedJson out = OrderedJson::array();
  for (const ReportException& e : exceptions) {
    out.push_back({{"model", e.model}, {"id", e.id}, {"reason", e.reason}});
  }
  return out;
}

std::string display_or_na(const OrderedJson& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return kNa;
  return it->get<std::string>();
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string row = "|";
  for (const std::string& c : cells) row += " " + c + " |";
  return row + "\n";
}

std::string md_rule(std::size_t columns) {
  std::string row = "|";
  for (std::size_t i = 0; i < columns; ++i) row += i == 0 ? " --- |" : " ---: |";
  return row + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string acc_key(double k) { return "acc@" + format_k(k); }

// "object" -> "Object" for table headers.
std::string column_title(Dimension dim) {
  std::string s(dimension_name(dim));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

// Correlations of one paired series, recording degenerate statistics.
void correlate(const std::vector<double>& pred, const std::vector<double>& gt,
               std::optional<double>& plcc_out, std::optional<double>& srcc_out,
               std::vector<std::string>& degenerate) {
  if (pred.size() < 2) {
    degenerate.push_back("plcc: EmptySeries");
    degenerate.push_back("srcc: EmptySeries");
    return;
  }
  const PairedSeries series(pred, gt);
  try {
    plcc_out = plcc(series);
  } catch (const Error& e) {
    degenerate.push_back("plcc: " + std::string(error_code_name(e.code())));
  }
  try {
    srcc_out = srcc(series);
  } catch (const Error& e) {
    degenerate.push_back("srcc: " + std::string(error_code_name(e.code())));
  }
}

std::string string_field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchemaError, std::string("missing string '") + key + "'");
  }
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_array()) {
    throw Error(ErrorCode::kSchemaError, std::string("'") + key + "' must be an array");
  }
  std::vector<std::string> out;
  for (const Json& s : *it) {
    if (!s.is_string()) {
      throw Error(ErrorCode::kSchemaError, std::string("'") + key + "' must hold strings");
    }
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::array<double, kNumDimensions> mean_scores(
    const std::vector<const ScoredSample*>& samples) {
  std::array<double, kNumDimensions> sum{};
  for (const ScoredSample* s : samples) {
    for (std::size_t d = 0; d < kNumDimensions; ++d) sum[d] += s->scores.values()[d];
  }
  for (double& v : sum) v /= static_cast<double>(samples.size());
  return sum;
}

// Samples grouped by model, each group sorted by id.
std::map<std::string, std::vector<const ScoredSample*>> by_model(
    const std::vector<ScoredSample>& samples) {
  std::map<std::string, std::vector<const ScoredSample*>> groups;
  for (const ScoredSample& s : samples) groups[s.model].push_back(&s);
  for (auto& [model, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const ScoredSample* a, const ScoredSample* b) { return a->id < b->id; });
  }
  return groups;
}

}  // namespace

ScoredSamples collect_scored(std::span<const JsonlLine> lines,
                             const std::string& default_model) {
  ScoredSamples out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const JsonlLine& line : lines) {
    const std::string where = "line " + std::to_string(line.line_no);
    if (!line.value) {
      out.exceptions.push_back({"", where, line.error});
      continue;
    }
    const Json& j = *line.value;
    if (!j.is_object()) {
      out.exceptions.push_back({"", where, "row is not an object"});
      continue;
    }
    std::string id;
    for (const char* key : {"id", "case_id"}) {
      if (const auto it = j.find(key); it != j.end() && it->is_string()) {
        id = it->get<std::string>();
        break;
      }
    }
    if (id.empty()) {
      out.exceptions.push_back({"", where, "row has no id"});
      continue;
    }
    std::string model = default_model;
    if (const auto it = j.find("model"); it != j.end() && it->is_string()) {
      model = it->get<std::string>();
    }
    if (const auto it = j.find("verdict");
        it != j.end() && it->is_string() && it->get<std::string>() != "valid") {
      out.exceptions.push_back({model, id, "verdict " + it->get<std::string>()});
      continue;
    }
    const auto scores = j.find("scores");
    if (scores == j.end() || scores->is_null()) {
      out.exceptions.push_back({model, id, "no scores"});
      continue;
    }
    try {
      ScoreVector v = score_vector_from_json(*scores);
      if (!seen.emplace(model, id).second) {
        out.exceptions.push_back({model, id, "duplicate row"});
        continue;
      }
      out.samples.push_back({model, id, v});
    } catch (const Error& e) {
      out.exceptions.push_back({model, id, e.what()});
    }
  }
  return out;
}

std::string fmt_corr(std::optional<double> v) {
  return v ? fmt::format("{:.3f}", *v) : kNa;
}

std::string fmt_pct(std::optional<double> v) {
  return v ? fmt::format("{:.1f}", *v) : kNa;
}

std::string fmt_2dp(std::optional<double> v) {
  return v ? fmt::format("{:.2f}", *v) : kNa;
}

EvalReport evaluate(const ScoredSamples& predictions,
                    std::span<const AnnotationRecord> ground_truth,
                    const ToolConfig& cfg, std::vector<InputDigest> inputs,
                    int threads) {
  EvalReport report;
  report.config_hash = config_hash(cfg);
  report.inputs = std::move(inputs);
  report.k_values = cfg.k_values;
  report.exceptions = predictions.exceptions;

  std::unordered_map<std::string, const AnnotationRecord*> gt_by_id;
  for (const AnnotationRecord& r : ground_truth) gt_by_id.emplace(r.id, &r);

  struct Aligned {
    std::vector<const ScoredSample*> preds;
    std::vector<const AnnotationRecord*> gts;
  };
  std::vector<Aligned> aligned;
  const auto groups = by_model(predictions.samples);
  for (const auto& [model, group] : groups) {
    ModelEval eval;
    eval.model = model;
    Aligned a;
    std::set<std::string> covered;
    for (const ScoredSample* s : group) {
      const auto it = gt_by_id.find(s->id);
      if (it == gt_by_id.end()) {
        report.exceptions.push_back({model, s->id, "id not in ground truth"});
        continue;
      }
      a.preds.push_back(s);
      a.gts.push_back(it->second);
      covered.insert(s->id);
    }
    std::vector<std::string> missing;
    for (const AnnotationRecord& r : ground_truth) {
      if (!covered.contains(r.id)) missing.push_back(r.id);
    }
    std::sort(missing.begin(), missing.end());
    for (const std::string& id : missing) {
      report.exceptions.push_back({model, id, "missing prediction"});
    }
    eval.n = a.preds.size();
    report.models.push_back(std::move(eval));
    aligned.push_back(std::move(a));
  }

  const std::size_t tasks = report.models.size() * kNumDimensions;
  parallel_for(tasks, threads, [&](std::size_t t) {
    const std::size_t m = t / kNumDimensions;
    const Dimension dim = kAllDimensions[t % kNumDimensions];
    const Aligned& a = aligned[m];
    DimensionEval& out = report.models[m].dims[index_of(dim)];
    std::vector<double> pred, gt;
    pred.reserve(a.preds.size());
    gt.reserve(a.gts.size());
    for (std::size_t i = 0; i < a.preds.size(); ++i) {
      pred.push_back(a.preds[i]->scores.value(dim));
      gt.push_back(a.gts[i]->scores.value(dim));
    }
    out.n = pred.size();
    correlate(pred, gt, out.plcc, out.srcc, out.degenerate);
    for (double k : cfg.k_values) {
      out.acc.push_back(pred.empty() ? std::nullopt
                                     : std::optional(acc_at_k(PairedSeries(pred, gt), k)));
    }
  });
  return report;
}

OrderedJson eval_report_to_json(const EvalReport& report) {
  OrderedJson j = header(report.config_hash, report.inputs);
  j["kind"] = "eval";
  j["k"] = report.k_values;
  OrderedJson models = OrderedJson::object();
  for (const ModelEval& m : report.models) {
    OrderedJson mj;
    mj["n"] = m.n;
    OrderedJson dims = OrderedJson::object();
    OrderedJson display = OrderedJson::object();
    for (Dimension dim : kAllDimensions) {
      const DimensionEval& d = m.dims[index_of(dim)];
      OrderedJson dj;
      dj["n"] = d.n;
      dj["plcc"] = opt_number(d.plcc);
      dj["srcc"] = opt_number(d.srcc);
      OrderedJson acc = OrderedJson::object();
      OrderedJson disp;
      disp["plcc_srcc"] = fmt_corr(d.plcc) + " / " + fmt_corr(d.srcc);
      disp["plcc"] = fmt_corr(d.plcc);
      disp["srcc"] = fmt_corr(d.srcc);
      for (std::size_t i = 0; i < report.k_values.size(); ++i) {
        const std::string key = acc_key(report.k_values[i]);
        acc[key] = opt_number(d.acc[i]);
        disp[key] = fmt_pct(d.acc[i]);
      }
      dj["acc"] = std::move(acc);
      dj["degenerate"] = d.degenerate;
      const std::string name(dimension_name(dim));
      dims[name] = std::move(dj);
      display[name] = std::move(disp);
    }
    mj["dimensions"] = std::move(dims);
    mj["display"] = std::move(display);
    models[m.model] = std::move(mj);
  }
  j["models"] = std::move(models);
  j["exceptions"] = exceptions_json(report.exceptions);
  return j;
}

std::string render_eval_markdown(const OrderedJson& report) {
  std::vector<std::string> acc_keys;
  for (const auto& k : report.at("k")) acc_keys.push_back(acc_key(k.get<double>()));

  std::vector<std::string> head = {"Model"};
  for (Dimension dim : kAllDimensions) head.push_back(column_title(dim));

  std::string out = "## Correlation (PLCC / SRCC)\n\n";
  out += md_row(head) + md_rule(head.size());
  for (const auto& [model, mj] : report.at("models").items()) {
    std::vector<std::string> row = {model};
    for (Dimension dim : kAllDimensions) {
      row.push_back(display_or_na(mj.at("display").at(std::string(dimension_name(dim))),
                                  "plcc_srcc"));
    }
    out += md_row(row);
  }

  std::string acc_title;
  for (const std::string& k : acc_keys) {
    acc_title += (acc_title.empty() ? "" : " / ") + k;
  }
  out += "\n## Accuracy (" + acc_title + ", %)\n\n";
  out += md_row(head) + md_rule(head.size());
  for (const auto& [model, mj] : report.at("models").items()) {
    std::vector<std::string> row = {model};
    for (Dimension dim : kAllDimensions) {
      const auto& disp = mj.at("display").at(std::string(dimension_name(dim)));
      std::string cell;
      for (const std::string& k : acc_keys) {
        cell += (cell.empty() ? "" : " / ") + display_or_na(disp, k);
      }
      row.push_back(cell);
    }
    out += md_row(row);
  }
  const std::size_t exceptions = report.at("exceptions").size();
  out += fmt::format("\n{} input row(s) listed under \"exceptions\" in the JSON report.\n",
                     exceptions);
  return out;
}

std::string render_eval_csv(const OrderedJson& report) {
  std::vector<std::string> acc_keys;
  for (const auto& k : report.at("k")) acc_keys.push_back(acc_key(k.get<double>()));
  std::string out = "model,dimension,n,plcc,srcc";
  for (const std::string& k : acc_keys) out += "," + k;
  out += "\n";
  for (const auto& [model, mj] : report.at("models").items()) {
    for (Dimension dim : kAllDimensions) {
      const std::string name(dimension_name(dim));
      const auto& disp = mj.at("display").at(name);
      out += csv_field(model) + "," + name + "," +
             std::to_string(mj.at("dimensions").at(name).at("n").get<std::size_t>()) +
             "," + display_or_na(disp, "plcc") + "," + display_or_na(disp, "srcc");
      for (const std::string& k : acc_keys) out += "," + display_or_na(disp, k);
      out += "\n";
    }
  }
  return out;
}

TextCase text_case_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchemaError, "text case must be an object");
  TextCase c;
  c.case_id = string_field(j, "case_id");
  c.model = string_field(j, "model");
  c.gt_phrases = string_list(j, "gt_phrases");
  c.pred_phrases = string_list(j, "pred_phrases");
  c.gt_text = string_field(j, "gt_text");
  c.pred_text = string_field(j, "pred_text");
  return c;
}

namespace {

struct TextCaseResult {
  const TextCase* source = nullptr;
  PhraseScores phrases;
  double char_sim = 0.0;
  double lev_sim = 0.0;
};

std::vector<TextCaseResult> score_text_cases(std::span<const TextCase> cases) {
  std::vector<TextCaseResult> results;
  results.reserve(cases.size());
  for (const TextCase& c : cases) {
    TextCaseResult r;
    r.source = &c;
    r.phrases = phrase_scores(PhraseSet(c.gt_phrases), PhraseSet(c.pred_phrases));
    const TextPair pair{c.gt_text, c.pred_text};
    r.char_sim = bag_of_chars_cosine(pair);
    r.lev_sim = normalized_levenshtein_sim(pair);
    results.push_back(r);
  }
  std::sort(results.begin(), results.end(),
            [](const TextCaseResult& a, const TextCaseResult& b) {
              return std::tie(a.source->model, a.source->case_id) <
                     std::tie(b.source->model, b.source->case_id);
            });
  return results;
}

struct TextMeans {
  std::size_t n = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0, char_sim = 0.0, lev_sim = 0.0;
  std::size_t both_empty = 0;
};

std::map<std::string, TextMeans> text_means(const std::vector<TextCaseResult>& results) {
  std::map<std::string, TextMeans> means;
  for (const TextCaseResult& r : results) {
    TextMeans& m = means[r.source->model];
    ++m.n;
    m.precision += r.phrases.precision;
    m.recall += r.phrases.recall;
    m.f1 += r.phrases.f1;
    m.char_sim += r.char_sim;
    m.lev_sim += r.lev_sim;
    if (r.phrases.both_empty) ++m.both_empty;
  }
  for (auto& [model, m] : means) {
    const auto n = static_cast<double>(m.n);
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    m.char_sim /= n;
    m.lev_sim /= n;
  }
  return means;
}

OrderedJson text_means_json(const TextMeans& m) {
  OrderedJson j;
  j["n"] = m.n;
  j["phrase_precision"] = m.precision;
  j["phrase_recall"] = m.recall;
  j["phrase_f1"] = m.f1;
  j["char_sim"] = m.char_sim;
  j["lev_sim"] = m.lev_sim;
  j["both_empty_phrase_cases"] = m.both_empty;
  return j;
}

OrderedJson text_display(const TextMeans& m) {
  return {{"phrase_f1", fmt_2dp(m.f1)},
          {"char_sim", fmt_2dp(m.char_sim)},
          {"lev_sim", fmt_2dp(m.lev_sim)}};
}

OrderedJson fidelity_json(const FidelityRow& row) {
  OrderedJson j;
  j["n"] = row.cases;
  j["dino_sim"] = row.dino_sim_mean;
  j["clip_score"] = row.clip_score_mean;
  j["lpips"] = opt_number(row.lpips_mean);
  j["lpips_cases"] = row.lpips_cases;
  return j;
}

OrderedJson fidelity_display(const FidelityRow& row) {
  return {{"dino_sim", fmt_2dp(row.dino_sim_mean)},
          {"lpips", fmt_2dp(row.lpips_mean)},
          {"clip_score", fmt_2dp(row.clip_score_mean)}};
}

}  // namespace

OrderedJson text_metrics_report(std::span<const TextCase> cases) {
  const std::vector<TextCaseResult> results = score_text_cases(cases);
  OrderedJson j;
  OrderedJson models = OrderedJson::object();
  for (const auto& [model, m] : text_means(results)) {
    OrderedJson mj = text_means_json(m);
    mj["display"] = text_display(m);
    models[model] = std::move(mj);
  }
  j["models"] = std::move(models);
  OrderedJson rows = OrderedJson::array();
  for (const TextCaseResult& r : results) {
    OrderedJson row;
    row["model"] = r.source->model;
    row["case_id"] = r.source->case_id;
    row["phrase_precision"] = r.phrases.precision;
    row["phrase_recall"] = r.phrases.recall;
    row["phrase_f1"] = r.phrases.f1;
    row["char_sim"] = r.char_sim;
    row["lev_sim"] = r.lev_sim;
    rows.push_back(std::move(row));
  }
  j["cases"] = std::move(rows);
  return j;
}

OrderedJson fidelity_report(std::span<const FeatureRecord> records) {
  OrderedJson j;
  OrderedJson models = OrderedJson::object();
  for (const auto& [model, row] : fidelity_rows(records)) {
    OrderedJson mj = fidelity_json(row);
    mj["display"] = fidelity_display(row);
    models[model] = std::move(mj);
  }
  j["models"] = std::move(models);
  return j;
}

std::map<std::string, OrderedJson> build_bench_report(
    const BenchInputs& inputs, const ToolConfig& cfg,
    const std::vector<InputDigest>& digests) {
  if (!inputs.human && !inputs.evaluator && !inputs.text && !inputs.fidelity) {
    throw Error(ErrorCode::kConfigError, "bench report needs at least one input block");
  }
  const std::string hash = config_hash(cfg);

  std::map<std::string, std::vector<const ScoredSample*>> human, evaluator;
  if (inputs.human) human = by_model(*inputs.human);
  if (inputs.evaluator) evaluator = by_model(*inputs.evaluator);
  std::map<std::string, TextMeans> text;
  if (inputs.text) text = text_means(score_text_cases(*inputs.text));
  std::map<std::string, FidelityRow> fidelity;
  if (inputs.fidelity) fidelity = fidelity_rows(*inputs.fidelity);

  std::set<std::string> models;
  for (const auto& [m, _] : human) models.insert(m);
  for (const auto& [m, _] : evaluator) models.insert(m);
  for (const auto& [m, _] : text) models.insert(m);
  for (const auto& [m, _] : fidelity) models.insert(m);

  std::map<std::string, OrderedJson> out;
  for (const std::string& model : models) {
    OrderedJson doc = header(hash, digests);
    doc["kind"] = "bench";
    doc["model"] = model;
    OrderedJson display = OrderedJson::object();

    auto score_block = [&](const char* name,
                           const std::map<std::string, std::vector<const ScoredSample*>>& src) {
      const auto it = src.find(model);
      if (it == src.end()) return;
      const auto means = mean_scores(it->second);
      OrderedJson block, disp;
      block["n"] = it->second.size();
      OrderedJson mj;
      for (Dimension dim : kAllDimensions) {
        const std::string dn(dimension_name(dim));
        mj[dn] = means[index_of(dim)];
        disp[dn] = fmt_2dp(means[index_of(dim)]);
      }
      block["means"] = std::move(mj);
      doc[name] = std::move(block);
      display[name] = std::move(disp);
    };
    score_block("human", human);
    score_block("evaluator", evaluator);

    const auto h = human.find(model);
    const auto e = evaluator.find(model);
    if (h != human.end() && e != evaluator.end()) {
      std::map<std::string, const ScoredSample*> ev_by_id;
      for (const ScoredSample* s : e->second) ev_by_id.emplace(s->id, s);
      std::vector<std::pair<const ScoredSample*, const ScoredSample*>> pairs;
      for (const ScoredSample* s : h->second) {
        if (const auto it = ev_by_id.find(s->id); it != ev_by_id.end()) {
          pairs.emplace_back(s, it->second);
        }
      }
      OrderedJson block, dims, disp;
      block["n"] = pairs.size();
      for (Dimension dim : kAllDimensions) {
        std::vector<double> hv, ev;
        for (const auto& [hs, es] : pairs) {
          hv.push_back(hs->scores.value(dim));
          ev.push_back(es->scores.value(dim));
        }
        std::optional<double> p, s;
        std::vector<std::string> degenerate;
        correlate(ev, hv, p, s, degenerate);
        const std::string dn(dimension_name(dim));
        dims[dn] = {{"plcc", opt_number(p)},
                    {"srcc", opt_number(s)},
                    {"degenerate", degenerate}};
        disp[dn] = fmt_corr(p) + " / " + fmt_corr(s);
      }
      block["dimensions"] = std::move(dims);
      doc["human_vs_evaluator"] = std::move(block);
      display["human_vs_evaluator"] = std::move(disp);
    }

    if (const auto it = text.find(model); it != text.end()) {
      doc["text"] = text_means_json(it->second);
      display["text"] = text_display(it->second);
    }
    if (const auto it = fidelity.find(model); it != fidelity.end()) {
      doc["fidelity"] = fidelity_json(it->second);
      display["fidelity"] = fidelity_display(it->second);
    }
    doc["display"] = std::move(display);
    OrderedJson exceptions = OrderedJson::array();
    for (const ReportException& ex : inputs.exceptions) {
      if (ex.model == model) {
        exceptions.push_back({{"model", ex.model}, {"id", ex.id}, {"reason", ex.reason}});
      }
    }
    doc["exceptions"] = std::move(exceptions);
    out.emplace(model, std::move(doc));
  }
  return out;
}

OrderedJson bench_summary(const std::map<std::string, OrderedJson>& per_model) {
  OrderedJson j;
  j["schema_version"] = kReportSchemaVersion;
  j["toolbox_version"] = kVersion;
  j["kind"] = "bench_summary";
  OrderedJson models = OrderedJson::object();
  for (const auto& [model, doc] : per_model) models[model] = doc;
  j["models"] = std::move(models);
  return j;
}

std::string render_bench_markdown(const std::map<std::string, OrderedJson>& per_model) {
  std::vector<std::string> head = {"Model"};
  for (Dimension dim : kAllDimensions) head.push_back(column_title(dim));

  std::string out = "## Benchmark scores (Human / Evaluator)\n\n";
  out += md_row(head) + md_rule(head.size());
  bool any_agreement = false;
  for (const auto& [model, doc] : per_model) {
    const OrderedJson& disp = doc.at("display");
    const OrderedJson empty = OrderedJson::object();
    const OrderedJson& h = disp.contains("human") ? disp.at("human") : empty;
    const OrderedJson& e = disp.contains("evaluator") ? disp.at("evaluator") : empty;
    std::vector<std::string> row = {model};
    for (Dimension dim : kAllDimensions) {
      const std::string dn(dimension_name(dim));
      row.push_back(display_or_na(h, dn) + " / " + display_or_na(e, dn));
    }
    out += md_row(row);
    any_agreement = any_agreement || disp.contains("human_vs_evaluator");
  }

  if (any_agreement) {
    out += "\n## Human vs evaluator agreement (PLCC / SRCC)\n\n";
    out += md_row(head) + md_rule(head.size());
    for (const auto& [model, doc] : per_model) {
      const OrderedJson& disp = doc.at("display");
      std::vector<std::string> row = {model};
      for (Dimension dim : kAllDimensions) {
        const std::string dn(dimension_name(dim));
        row.push_back(disp.contains("human_vs_evaluator")
                          ? display_or_na(disp.at("human_vs_evaluator"), dn)
                          : std::string(kNa));
      }
      out += md_row(row);
    }
  }

  const std::vector<std::string> fid_head = {"Model",    "Phrase F1", "Char Sim",
                                             "Lev Sim",  "DINO",      "LPIPS",
                                             "CLIP"};
  out += "\n## Text accuracy and subject fidelity\n\n";
  out += md_row(fid_head) + md_rule(fid_head.size());
  for (const auto& [model, doc] : per_model) {
    const OrderedJson& disp = doc.at("display");
    const OrderedJson empty = OrderedJson::object();
    const OrderedJson& t = disp.contains("text") ? disp.at("text") : empty;
    const OrderedJson& f = disp.contains("fidelity") ? disp.at("fidelity") : empty;
    out += md_row({model, display_or_na(t, "phrase_f1"), display_or_na(t, "char_sim"),
                   display_or_na(t, "lev_sim"), display_or_na(f, "dino_sim"),
                   display_or_na(f, "lpips"), display_or_na(f, "clip_score")});
  }
  return out;
}

std::string render_bench_csv(const std::map<std::string, OrderedJson>& per_model) {
  std::string out = "model";
  for (Dimension dim : kAllDimensions) {
    out += fmt::format(",human_{0},evaluator_{0}", dimension_name(dim));
  }
  out += ",phrase_f1,char_sim,lev_sim,dino_sim,lpips,clip_score\n";
  const OrderedJson empty = OrderedJson::object();
  for (const auto& [model, doc] : per_model) {
    const OrderedJson& disp = doc.at("display");
    const OrderedJson& h = disp.contains("human") ? disp.at("human") : empty;
    const OrderedJson& e = disp.contains("evaluator") ? disp.at("evaluator") : empty;
    const OrderedJson& t = disp.contains("text") ? disp.at("text") : empty;
    const OrderedJson& f = disp.contains("fidelity") ? disp.at("fidelity") : empty;
    out += csv_field(model);
    for (Dimension dim : kAllDimensions) {
      const std::string dn(dimension_name(dim));
      out += "," + display_or_na(h, dn) + "," + display_or_na(e, dn);
    }
    for (const char* key : {"phrase_f1", "char_sim", "lev_sim"}) {
      out += "," + display_or_na(t, key);
    }
    for (const char* key : {"dino_sim", "lpips", "clip_score"}) {
      out += "," + display_or_na(f, key);
    }
    out += "\n";
  }
  return out;
}

std::string model_file_stem(const std::string& model) {
  std::string stem;
  for (char c : model) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    stem += ok ? c : '_';
  }
  if (stem.empty() || stem == "." || stem == "..") stem = "_" + stem;
  return stem;
}

}  // namespace posterq::cli
