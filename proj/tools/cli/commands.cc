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

#include "cli/commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "cli/report.h"
#include "cli/synth.h"
#include "posterq/dataset_analysis.h"
#include "posterq/hard_subset.h"
#include "posterq/output_parser.h"
#include "posterq/reward.h"
#include "posterq/stats.h"
#include "posterq/version.h"

namespace posterq::cli {
namespace {

struct Loaded {
  std::string text;
  InputDigest digest;
};

Loaded load(const std::string& role, const fs::path& path) {
  Loaded l;
  l.text = read_file(path);
  l.digest = {role, path.string(), sha256_hex(l.text)};
  return l;
}

void emit(const CommonOptions& common, Streams io, const std::string& content) {
  if (common.out) {
    write_file(*common.out, content);
  } else {
    io.out << content;
  }
}

const fs::path& require_out_dir(const CommonOptions& common, const char* command) {
  if (!common.out) {
    throw Error(ErrorCode::kConfigError,
                std::string(command) + " needs --out naming a directory");
  }
  return *common.out;
}

std::optional<TagTaxonomy> load_taxonomy(const ToolConfig& cfg) {
  if (!cfg.tag_taxonomy) return std::nullopt;
  const Json j = Json::parse(read_file(*cfg.tag_taxonomy), nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::kConfigError, "tag taxonomy '" + *cfg.tag_taxonomy +
                                             "' is not valid JSON");
  }
  return taxonomy_from_json(j);
}

std::vector<AnnotationRecord> load_gt(const Loaded& gt, const ToolConfig& cfg) {
  const std::optional<TagTaxonomy> taxonomy = load_taxonomy(cfg);
  return parse_annotations(gt.text, gt.digest.path, taxonomy ? &*taxonomy : nullptr);
}

OrderedJson report_header(const std::string& kind, const ToolConfig& cfg,
                          const std::vector<InputDigest>& inputs) {
  OrderedJson j;
  j["schema_version"] = kReportSchemaVersion;
  j["toolbox_version"] = kVersion;
  j["kind"] = kind;
  j["config_hash"] = config_hash(cfg);
  OrderedJson in = OrderedJson::array();
  for (const InputDigest& d : inputs) {
    in.push_back({{"role", d.role}, {"path", d.path}, {"sha256", d.sha256}});
  }
  j["inputs"] = std::move(in);
  return j;
}

std::string pretty(const OrderedJson& j) { return j.dump(2) + "\n"; }

std::string num(double v) { return fmt::format("{}", v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

OrderedJson opt_json(const std::optional<double>& v) {
  return v ? OrderedJson(*v) : OrderedJson();
}

// Rows of a JSONL file that must all be objects; the error names the line.
template <typename Fn>
void for_each_object(const Loaded& file, Fn&& fn) {
  for (const JsonlLine& line : parse_jsonl(file.text)) {
    const std::string where = fmt::format("{}:{}", file.digest.path, line.line_no);
    if (!line.value) throw Error(ErrorCode::kSchemaError, where + ": " + line.error);
    if (!line.value->is_object()) {
      throw Error(ErrorCode::kSchemaError, where + ": row is not an object");
    }
    try {
      fn(*line.value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSchemaError && e.code() != ErrorCode::kOutOfRange &&
          e.code() != ErrorCode::kNotFinite) {
        throw;
      }
      throw Error(ErrorCode::kSchemaError, where + ": " + e.what());
    }
  }
}

std::string required_string(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchemaError, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::string md_table(const std::vector<std::string>& head,
                     const std::vector<std::vector<std::string>>& rows) {
  auto row = [](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (const std::string& c : cells) s += " " + c + " |";
    return s + "\n";
  };
  std::string out = row(head);
  std::vector<std::string> rule(head.size(), "---");
  out += row(rule);
  for (const auto& r : rows) out += row(r);
  return out;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kConfigError ? kExitConfig : kExitFatal;
}

ToolConfig effective_config(const CommonOptions& common) {
  ToolConfig cfg = common.config ? load_config(*common.config) : ToolConfig{};
  if (common.format) cfg.format = *common.format;
  if (common.threads < 1) throw Error(ErrorCode::kConfigError, "--threads must be >= 1");
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------- parse

void cmd_parse(const CommonOptions& common, const ParseOptions& opts, Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded input = load("raw", opts.input);

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> candidates;
  std::vector<std::pair<std::size_t, std::string>> malformed;
  for (const JsonlLine& line : parse_jsonl(input.text)) {
    if (!line.value) {
      malformed.emplace_back(line.line_no, line.error);
      continue;
    }
    const Json& j = *line.value;
    const auto id = j.is_object() ? j.find("id") : j.end();
    const auto raw = j.is_object() ? j.find("raw") : j.end();
    if (!j.is_object() || id == j.end() || !id->is_string() || raw == j.end() ||
        !raw->is_string()) {
      malformed.emplace_back(line.line_no, "row needs string fields 'id' and 'raw'");
      continue;
    }
    auto [it, inserted] = candidates.try_emplace(id->get<std::string>());
    if (inserted) order.push_back(it->first);
    it->second.push_back(raw->get<std::string>());
  }

  std::map<Verdict, std::size_t> counts;
  std::string jsonl;
  std::string csv = "id,verdict,attempts,object,background,text,layout,overall\n";
  for (const std::string& id : order) {
    const std::vector<std::string>& raws = candidates.at(id);
    std::size_t next = 0;
    RetryPolicy policy;
    policy.max_attempts = std::min<int>(cfg.retry.max_attempts, static_cast<int>(raws.size()));
    const AttemptResult result = attempt_parse([&] { return raws[next++]; }, policy);
    const ModelOutput& out = result.output;
    ++counts[out.verdict];

    OrderedJson row;
    row["id"] = id;
    row["verdict"] = std::string(verdict_name(out.verdict));
    if (out.scores) row["scores"] = score_vector_to_json(*out.scores);
    row["attempts"] = result.attempts_used;
    jsonl += row.dump() + "\n";

    csv += fmt::format("{},{},{}", id, verdict_name(out.verdict), result.attempts_used);
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      csv += "," + (out.scores ? num(out.scores->values()[d]) : std::string());
    }
    csv += "\n";
  }
  for (const auto& [line_no, error] : malformed) {
    jsonl += OrderedJson({{"line", line_no}, {"error", error}}).dump() + "\n";
  }

  std::vector<std::vector<std::string>> rows;
  for (Verdict v : {Verdict::kValid, Verdict::kInvalidStructure, Verdict::kInvalidJson,
                    Verdict::kInvalidSchema, Verdict::kOutOfRangeScore}) {
    rows.push_back({std::string(verdict_name(v)), std::to_string(counts[v])});
  }
  rows.push_back({"malformed_rows", std::to_string(malformed.size())});

  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, jsonl); break;
    case OutputFormat::kCsv: emit(common, io, csv); break;
    case OutputFormat::kMd: emit(common, io, md_table({"verdict", "count"}, rows)); break;
  }
  for (const auto& r : rows) io.log << r[0] << ": " << r[1] << "\n";
  io.log << "ids: " << order.size() << "\n";
}

// ---------------------------------------------------------------- reward

void cmd_reward(const CommonOptions& common, const RewardOptions& opts, Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded input = load("raw", opts.input);
  std::map<std::string, ScoreVector> gt_scores;
  if (opts.gt) {
    for (const AnnotationRecord& r : load_gt(load("gt", *opts.gt), cfg)) {
      gt_scores.emplace(r.id, r.scores);
    }
  }

  struct Row {
    std::string id;
    RewardBreakdown reward;
    std::optional<double> advantage;
  };
  std::vector<Row> rows;
  for_each_object(input, [&](const Json& j) {
    Row row;
    row.id = required_string(j, "id");
    const std::string raw = required_string(j, "raw");
    std::optional<ScoreVector> gt;
    if (const auto it = j.find("gt_scores"); it != j.end() && !it->is_null()) {
      gt = score_vector_from_json(*it);
    } else if (const auto g = gt_scores.find(row.id); g != gt_scores.end()) {
      gt = g->second;
    }
    if (!gt) {
      throw Error(ErrorCode::kMissingGroundTruth, "no ground truth for id '" + row.id + "'");
    }
    row.reward = total_reward(parse_output(raw), *gt, cfg.reward);
    rows.push_back(std::move(row));
  });

  if (opts.advantages) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto [it, inserted] = groups.try_emplace(rows[i].id);
      if (inserted) order.push_back(rows[i].id);
      it->second.push_back(i);
    }
    for (const std::string& id : order) {
      const std::vector<std::size_t>& members = groups.at(id);
      std::vector<double> totals;
      for (std::size_t i : members) totals.push_back(rows[i].reward.total);
      if (totals.size() != static_cast<std::size_t>(cfg.reward.group_size)) {
        throw Error(ErrorCode::kSchemaError,
                    fmt::format("group '{}' has {} samples, expected {}", id,
                                totals.size(), cfg.reward.group_size));
      }
      const std::vector<double> adv = group_advantages(totals, cfg.reward);
      for (std::size_t k = 0; k < members.size(); ++k) rows[members[k]].advantage = adv[k];
    }
  }

  std::string jsonl;
  std::string csv = "id,r_fmt,r_acc,r_dist,r_score,total";
  csv += opts.advantages ? ",advantage\n" : "\n";
  double sum = 0.0;
  double lo = rows.empty() ? 0.0 : rows.front().reward.total;
  double hi = lo;
  for (const Row& r : rows) {
    OrderedJson j;
    j["id"] = r.id;
    j["r_fmt"] = r.reward.r_fmt;
    j["r_acc"] = r.reward.r_acc;
    j["r_dist"] = r.reward.r_dist;
    j["r_score"] = r.reward.r_score;
    j["total"] = r.reward.total;
    if (r.advantage) j["advantage"] = *r.advantage;
    jsonl += j.dump() + "\n";
    csv += fmt::format("{},{},{},{},{},{}", r.id, r.reward.r_fmt, num(r.reward.r_acc),
                       num(r.reward.r_dist), num(r.reward.r_score), num(r.reward.total));
    csv += r.advantage ? "," + num(*r.advantage) + "\n" : "\n";
    sum += r.reward.total;
    lo = std::min(lo, r.reward.total);
    hi = std::max(hi, r.reward.total);
  }
  const std::optional<double> mean =
      rows.empty() ? std::nullopt : std::optional(sum / static_cast<double>(rows.size()));

  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, jsonl); break;
    case OutputFormat::kCsv: emit(common, io, csv); break;
    case OutputFormat::kMd:
      emit(common, io,
           md_table({"n", "mean total", "min total", "max total"},
                    {{std::to_string(rows.size()), fmt_2dp(mean),
                      fmt_2dp(rows.empty() ? std::nullopt : std::optional(lo)),
                      fmt_2dp(rows.empty() ? std::nullopt : std::optional(hi))}}));
      break;
  }
  io.log << "n: " << rows.size() << "\n";
  if (mean) io.log << fmt::format("total mean: {} min: {} max: {}\n", *mean, lo, hi);
}

// ---------------------------------------------------------------- eval

void cmd_eval(const CommonOptions& common, const EvalOptions& opts, Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded pred = load("pred", opts.pred);
  const Loaded gt_file = load("gt", opts.gt);
  const std::vector<AnnotationRecord> gt = load_gt(gt_file, cfg);
  const ScoredSamples samples = collect_scored(parse_jsonl(pred.text), opts.default_model);

  const EvalReport report =
      evaluate(samples, gt, cfg, {pred.digest, gt_file.digest}, common.threads);
  const OrderedJson j = eval_report_to_json(report);
  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, pretty(j)); break;
    case OutputFormat::kCsv: emit(common, io, render_eval_csv(j)); break;
    case OutputFormat::kMd: emit(common, io, render_eval_markdown(j)); break;
  }
  io.log << fmt::format("models: {} exceptions: {}\n", report.models.size(),
                        report.exceptions.size());
}

// ---------------------------------------------------------------- select-hard

void cmd_select_hard(const CommonOptions& common, const SelectOptionsCli& opts,
                     Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded pred = load("pred", opts.pred);
  const Loaded gt_file = load("gt", opts.gt);
  const std::vector<AnnotationRecord> gt = load_gt(gt_file, cfg);
  const ScoredSamples samples = collect_scored(parse_jsonl(pred.text), "model");

  std::map<std::string, ScoreVector> preds;
  for (const ScoredSample& s : samples.samples) {
    if (!preds.emplace(s.id, s.scores).second) {
      throw Error(ErrorCode::kSchemaError,
                  "select-hard expects one prediction per id; '" + s.id + "' repeats");
    }
  }
  const std::vector<ErrorRecord> errors = compute_errors(preds, gt);
  const std::uint64_t target = opts.target.value_or(cfg.selection_target);
  const bool global = opts.global || cfg.selection_mode == SelectionMode::kGlobal;
  const bool fill = opts.fill_remainder || cfg.fill_remainder;

  OrderedJson j = report_header("select_hard", cfg, {pred.digest, gt_file.digest});
  j["mode"] = global ? "global" : "stratified";
  std::vector<std::string> selected;
  std::vector<std::vector<std::string>> plan_rows;
  if (global) {
    selected = select_global(errors, target);
    j["target"] = target;
  } else {
    const SelectionPlan plan = plan_quotas(count_sources(errors), target);
    selected = select_hard(errors, plan, {fill, common.threads});
    OrderedJson p;
    p["target"] = plan.target;
    OrderedJson pops, quotas;
    for (SourceKind s : kAllSources) {
      const std::string name(source_name(s));
      pops[name] = plan.populations[index_of(s)];
      quotas[name] = plan.quotas[index_of(s)];
      plan_rows.push_back({name, std::to_string(plan.populations[index_of(s)]),
                           std::to_string(plan.quotas[index_of(s)])});
    }
    p["populations"] = std::move(pops);
    p["quotas"] = std::move(quotas);
    p["remainder"] = plan.remainder;
    p["fill_remainder"] = fill;
    j["plan"] = std::move(p);
  }
  j["count"] = selected.size();
  j["selected"] = selected;

  std::map<std::string, const ErrorRecord*> by_id;
  for (const ErrorRecord& e : errors) by_id.emplace(e.id, &e);
  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, pretty(j)); break;
    case OutputFormat::kCsv: {
      std::string csv = "position,id,source,error\n";
      for (std::size_t i = 0; i < selected.size(); ++i) {
        const ErrorRecord& e = *by_id.at(selected[i]);
        csv += fmt::format("{},{},{},{}\n", i + 1, e.id, source_name(e.source), num(e.error));
      }
      emit(common, io, csv);
      break;
    }
    case OutputFormat::kMd: {
      std::string md = fmt::format("Selected {} of {} samples ({}).\n\n", selected.size(),
                                   errors.size(), global ? "global" : "stratified");
      if (!global) md += md_table({"source", "population", "quota"}, plan_rows);
      emit(common, io, md);
      break;
    }
  }
  io.log << fmt::format("selected: {}\n", selected.size());
}

// ---------------------------------------------------------------- stats

namespace {

OrderedJson summary_json(const DistributionSummary& s) {
  OrderedJson j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["stddev"] = s.stddev;
  j["edges"] = s.edges;
  j["counts"] = s.counts;
  return j;
}

struct Agreement {
  std::optional<AlphaResult> alpha;
  std::optional<double> loose;
  std::string note;
};

std::array<Agreement, kNumDimensions> agreement_from(const Loaded& file) {
  std::map<std::string, std::map<std::string, ScoreVector>> cells;
  std::set<std::string> coders;
  for_each_object(file, [&](const Json& j) {
    const std::string unit = required_string(j, "unit");
    const std::string coder = required_string(j, "coder");
    const auto scores = j.find("scores");
    if (scores == j.end()) throw Error(ErrorCode::kSchemaError, "missing 'scores'");
    if (!cells[unit].emplace(coder, score_vector_from_json(*scores)).second) {
      throw Error(ErrorCode::kSchemaError,
                  "duplicate rating for unit '" + unit + "' coder '" + coder + "'");
    }
    coders.insert(coder);
  });

  std::array<Agreement, kNumDimensions> out;
  for (Dimension dim : kAllDimensions) {
    std::vector<ReliabilityMatrix::Row> units;
    for (const auto& [unit, by_coder] : cells) {
      ReliabilityMatrix::Row row;
      for (const std::string& c : coders) {
        const auto it = by_coder.find(c);
        row.push_back(it == by_coder.end() ? std::nullopt
                                           : std::optional(it->second.value(dim)));
      }
      units.push_back(std::move(row));
    }
    const ReliabilityMatrix m(std::move(units));
    Agreement& a = out[index_of(dim)];
    try {
      a.alpha = krippendorff_alpha_interval(m);
      a.loose = loose_accuracy(m);
    } catch (const Error& e) {
      a.note = error_code_name(e.code());
    }
  }
  return out;
}

}  // namespace

void cmd_stats(const CommonOptions& common, const StatsOptions& opts, Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded gt_file = load("gt", opts.gt);
  const std::vector<AnnotationRecord> records = load_gt(gt_file, cfg);
  std::vector<InputDigest> inputs = {gt_file.digest};

  std::optional<CorrelationMatrix> corr;
  std::string corr_note;
  try {
    corr = correlation_matrix(records);
  } catch (const Error& e) {
    corr_note = error_code_name(e.code());
  }
  const WeakestLinkReport wl = weakest_link(records, cfg.weakest_link_threshold);
  std::array<std::optional<DistributionSummary>, kNumDimensions> dists;
  if (!records.empty()) {
    for (Dimension dim : kAllDimensions) {
      dists[index_of(dim)] = score_distribution(records, dim, cfg.histogram_bins);
    }
  }
  const bool any_cot =
      std::any_of(records.begin(), records.end(), [](const auto& r) { return r.cot.has_value(); });
  std::optional<DistributionSummary> cot;
  if (any_cot) cot = cot_length_distribution(records, cfg.histogram_bins);
  const SourceMeans means = per_source_means(records);

  std::optional<std::array<Agreement, kNumDimensions>> agreement;
  if (opts.ratings) {
    const Loaded ratings = load("ratings", *opts.ratings);
    inputs.push_back(ratings.digest);
    agreement = agreement_from(ratings);
  }
  std::vector<std::pair<std::string, double>> edit_rates;
  if (opts.edits) {
    const Loaded edits = load("edits", *opts.edits);
    inputs.push_back(edits.digest);
    for_each_object(edits, [&](const Json& j) {
      const std::string id = required_string(j, "id");
      edit_rates.emplace_back(id, cot_edit_rate(required_string(j, "original"),
                                                required_string(j, "edited")));
    });
  }

  OrderedJson j = report_header("stats", cfg, inputs);
  j["records"] = records.size();

  OrderedJson cj;
  if (corr) {
    OrderedJson matrix = OrderedJson::array();
    for (const auto& row : corr->entries) {
      OrderedJson r = OrderedJson::array();
      for (const auto& v : row) r.push_back(opt_json(v));
      matrix.push_back(std::move(r));
    }
    OrderedJson dims = OrderedJson::array();
    for (Dimension d : kSubDimensions) dims.push_back(std::string(dimension_name(d)));
    cj["dimensions"] = std::move(dims);
    cj["matrix"] = std::move(matrix);
    cj["mean_offdiag"] = opt_json(corr->mean_offdiag);
    cj["undefined_entries"] = corr->undefined_entries;
  } else {
    cj["undefined"] = corr_note;
  }
  j["correlation"] = std::move(cj);

  OrderedJson wj;
  wj["threshold"] = wl.threshold;
  wj["total"] = wl.total;
  wj["flagged"] = wl.flagged;
  OrderedJson counts, pct, ties;
  for (Dimension d : kSubDimensions) {
    const std::string name(dimension_name(d));
    counts[name] = wl.counts[index_of(d)];
    pct[name] = wl.percentages[index_of(d)];
    ties[name] = wl.tie_participation[index_of(d)];
  }
  wj["counts"] = std::move(counts);
  wj["percentages"] = std::move(pct);
  wj["tied_records"] = wl.tied_records;
  wj["tie_participation"] = std::move(ties);
  j["weakest_link"] = std::move(wj);

  OrderedJson dj = OrderedJson::object();
  for (Dimension d : kAllDimensions) {
    if (dists[index_of(d)]) dj[std::string(dimension_name(d))] = summary_json(*dists[index_of(d)]);
  }
  j["distributions"] = std::move(dj);
  if (cot) j["cot_length"] = summary_json(*cot);

  OrderedJson sj = OrderedJson::object();
  for (SourceKind s : kAllSources) {
    OrderedJson row;
    row["n"] = means.counts[index_of(s)];
    if (const auto& m = means.means[index_of(s)]) {
      OrderedJson mj;
      for (Dimension d : kAllDimensions) mj[std::string(dimension_name(d))] = (*m)[index_of(d)];
      row["means"] = std::move(mj);
    } else {
      row["means"] = nullptr;
    }
    sj[std::string(source_name(s))] = std::move(row);
  }
  j["source_means"] = std::move(sj);

  if (agreement) {
    OrderedJson aj;
    for (Dimension d : kAllDimensions) {
      const Agreement& a = (*agreement)[index_of(d)];
      OrderedJson row;
      row["alpha"] = a.alpha ? OrderedJson(a.alpha->alpha) : OrderedJson();
      row["no_expected_disagreement"] = a.alpha && a.alpha->no_expected_disagreement;
      row["pairable_values"] = a.alpha ? a.alpha->pairable_values : 0;
      row["loose_accuracy"] = opt_json(a.loose);
      if (!a.note.empty()) row["undefined"] = a.note;
      aj[std::string(dimension_name(d))] = std::move(row);
    }
    j["agreement"] = std::move(aj);
  }
  std::optional<double> edit_mean, edit_max;
  if (opts.edits) {
    OrderedJson ej;
    ej["n"] = edit_rates.size();
    double sum = 0.0;
    OrderedJson rates = OrderedJson::array();
    for (const auto& [id, rate] : edit_rates) {
      sum += rate;
      edit_max = std::max(edit_max.value_or(rate), rate);
      rates.push_back({{"id", id}, {"rate", rate}});
    }
    if (!edit_rates.empty()) edit_mean = sum / static_cast<double>(edit_rates.size());
    ej["mean_rate"] = opt_json(edit_mean);
    ej["max_rate"] = opt_json(edit_max);
    ej["rates"] = std::move(rates);
    j["edits"] = std::move(ej);
  }

  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, pretty(j)); break;
    case OutputFormat::kCsv: {
      const fs::path& dir = require_out_dir(common, "stats --format csv");
      if (corr) write_file(dir / "correlation.csv", correlation_csv(*corr));
      write_file(dir / "weakest_link.csv", weakest_link_csv(wl));
      write_file(dir / "source_means.csv", source_means_csv(means));
      for (Dimension d : kAllDimensions) {
        if (dists[index_of(d)]) {
          write_file(dir / fmt::format("distribution_{}.csv", dimension_name(d)),
                     distribution_csv(*dists[index_of(d)]));
        }
      }
      if (cot) write_file(dir / "cot_length.csv", distribution_csv(*cot));
      if (agreement) {
        std::string csv = "dimension,alpha,loose_accuracy,pairable_values\n";
        for (Dimension d : kAllDimensions) {
          const Agreement& a = (*agreement)[index_of(d)];
          csv += fmt::format("{},{},{},{}\n", dimension_name(d),
                             a.alpha ? num(a.alpha->alpha) : "", opt_num(a.loose),
                             a.alpha ? a.alpha->pairable_values : 0);
        }
        write_file(dir / "agreement.csv", csv);
      }
      if (opts.edits) {
        std::string csv = "id,rate\n";
        for (const auto& [id, rate] : edit_rates) csv += id + "," + num(rate) + "\n";
        write_file(dir / "edit_rates.csv", csv);
      }
      break;
    }
    case OutputFormat::kMd: {
      std::string md = fmt::format("Records: {}\n\n## Weakest link (min sub-score < {})\n\n",
                                   records.size(), num(wl.threshold));
      std::vector<std::vector<std::string>> rows;
      for (Dimension d : kSubDimensions) {
        rows.push_back({std::string(dimension_name(d)), std::to_string(wl.counts[index_of(d)]),
                        fmt_pct(wl.percentages[index_of(d)])});
      }
      md += md_table({"dimension", "count", "%"}, rows);
      if (corr) {
        md += "\n## Sub-dimension correlation\n\n";
        std::vector<std::string> head = {""};
        for (Dimension d : kSubDimensions) head.emplace_back(dimension_name(d));
        rows.clear();
        for (std::size_t r = 0; r < kNumSubDimensions; ++r) {
          std::vector<std::string> row = {head[r + 1]};
          for (const auto& v : corr->entries[r]) row.push_back(fmt_corr(v));
          rows.push_back(std::move(row));
        }
        md += md_table(head, rows);
      }
      if (agreement) {
        md += "\n## Inter-annotator agreement\n\n";
        rows.clear();
        for (Dimension d : kAllDimensions) {
          const Agreement& a = (*agreement)[index_of(d)];
          rows.push_back({std::string(dimension_name(d)),
                          fmt_corr(a.alpha ? std::optional(a.alpha->alpha) : std::nullopt),
                          fmt_pct(a.loose)});
        }
        md += md_table({"dimension", "alpha", "loose acc %"}, rows);
      }
      if (opts.edits) {
        md += fmt::format("\nRationale edit rate: mean {} %, max {} % over {} edits.\n",
                          fmt_pct(edit_mean), fmt_pct(edit_max), edit_rates.size());
      }
      emit(common, io, md);
      break;
    }
  }
  io.log << fmt::format("records: {} flagged: {}\n", records.size(), wl.flagged);
}

// ---------------------------------------------------------------- text / fidelity

void cmd_text_metrics(const CommonOptions& common, const TextMetricsOptions& opts,
                      Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded input = load("text", opts.input);
  std::vector<TextCase> cases;
  for_each_object(input, [&](const Json& j) { cases.push_back(text_case_from_json(j)); });
  OrderedJson j = report_header("text_metrics", cfg, {input.digest});
  const OrderedJson body = text_metrics_report(cases);
  j["models"] = body.at("models");
  j["cases"] = body.at("cases");

  std::vector<std::vector<std::string>> rows;
  std::string csv = "model,n,phrase_f1,char_sim,lev_sim\n";
  for (const auto& [model, mj] : j.at("models").items()) {
    const auto& d = mj.at("display");
    rows.push_back({model, d.at("phrase_f1").get<std::string>(),
                    d.at("char_sim").get<std::string>(), d.at("lev_sim").get<std::string>()});
    csv += fmt::format("{},{},{},{},{}\n", model, mj.at("n").get<std::size_t>(),
                       rows.back()[1], rows.back()[2], rows.back()[3]);
  }
  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, pretty(j)); break;
    case OutputFormat::kCsv: emit(common, io, csv); break;
    case OutputFormat::kMd:
      emit(common, io, md_table({"Model", "Phrase F1", "Char Sim", "Lev Sim"}, rows));
      break;
  }
  io.log << fmt::format("cases: {}\n", cases.size());
}

void cmd_fidelity(const CommonOptions& common, const FidelityOptions& opts, Streams io) {
  const ToolConfig cfg = effective_config(common);
  const Loaded input = load("features", opts.input);
  std::vector<FeatureRecord> records;
  for_each_object(input, [&](const Json& j) { records.push_back(feature_record_from_json(j)); });
  OrderedJson j = report_header("fidelity", cfg, {input.digest});
  j["models"] = fidelity_report(records).at("models");

  std::vector<std::vector<std::string>> rows;
  std::string csv = "model,n,dino_sim,lpips,clip_score\n";
  for (const auto& [model, mj] : j.at("models").items()) {
    const auto& d = mj.at("display");
    rows.push_back({model, d.at("dino_sim").get<std::string>(),
                    d.at("lpips").get<std::string>(), d.at("clip_score").get<std::string>()});
    csv += fmt::format("{},{},{},{},{}\n", model, mj.at("n").get<std::size_t>(),
                       rows.back()[1], rows.back()[2], rows.back()[3]);
  }
  switch (cfg.format) {
    case OutputFormat::kJson: emit(common, io, pretty(j)); break;
    case OutputFormat::kCsv: emit(common, io, csv); break;
    case OutputFormat::kMd:
      emit(common, io, md_table({"Model", "DINO", "LPIPS", "CLIP"}, rows));
      break;
  }
  io.log << fmt::format("cases: {}\n", records.size());
}

// ---------------------------------------------------------------- bench-report

void cmd_bench_report(const CommonOptions& common, const BenchReportOptions& opts,
                      Streams io) {
  const ToolConfig cfg = effective_config(common);
  if (!opts.human && !opts.evaluator && !opts.text && !opts.fidelity) {
    throw Error(ErrorCode::kConfigError,
                "bench-report needs at least one of --human, --evaluator, --text, --fidelity");
  }
  const fs::path& dir = require_out_dir(common, "bench-report");

  BenchInputs inputs;
  std::vector<InputDigest> digests;
  auto scored = [&](const char* role, const fs::path& path) {
    const Loaded file = load(role, path);
    digests.push_back(file.digest);
    ScoredSamples s = collect_scored(parse_jsonl(file.text), opts.default_model);
    for (ReportException& e : s.exceptions) {
      e.reason = std::string(role) + ": " + e.reason;
      inputs.exceptions.push_back(std::move(e));
    }
    return std::move(s.samples);
  };
  if (opts.human) inputs.human = scored("human", *opts.human);
  if (opts.evaluator) inputs.evaluator = scored("evaluator", *opts.evaluator);
  if (opts.text) {
    const Loaded file = load("text", *opts.text);
    digests.push_back(file.digest);
    std::vector<TextCase> cases;
    for_each_object(file, [&](const Json& j) { cases.push_back(text_case_from_json(j)); });
    inputs.text = std::move(cases);
  }
  if (opts.fidelity) {
    const Loaded file = load("fidelity", *opts.fidelity);
    digests.push_back(file.digest);
    std::vector<FeatureRecord> records;
    for_each_object(file,
                    [&](const Json& j) { records.push_back(feature_record_from_json(j)); });
    inputs.fidelity = std::move(records);
  }

  const std::map<std::string, OrderedJson> per_model = build_bench_report(inputs, cfg, digests);
  std::set<std::string> stems = {"summary", "report"};
  for (const auto& [model, doc] : per_model) {
    const std::string stem = model_file_stem(model);
    if (!stems.insert(stem).second) {
      throw Error(ErrorCode::kConfigError,
                  "model name '" + model + "' collides with another output file name");
    }
    write_file(dir / (stem + ".json"), pretty(doc));
  }
  OrderedJson summary = bench_summary(per_model);
  OrderedJson unmatched = OrderedJson::array();
  for (const ReportException& e : inputs.exceptions) {
    if (!per_model.contains(e.model)) {
      unmatched.push_back({{"model", e.model}, {"id", e.id}, {"reason", e.reason}});
    }
  }
  summary["unattributed_exceptions"] = std::move(unmatched);
  write_file(dir / "summary.json", pretty(summary));
  if (cfg.format == OutputFormat::kMd) {
    write_file(dir / "report.md", render_bench_markdown(per_model));
  } else if (cfg.format == OutputFormat::kCsv) {
    write_file(dir / "report.csv", render_bench_csv(per_model));
  }
  io.log << fmt::format("models: {} exceptions: {}\n", per_model.size(),
                        inputs.exceptions.size());
}

// ---------------------------------------------------------------- synth

void cmd_synth(const CommonOptions& common, const SynthOptions& opts, Streams io) {
  effective_config(common);
  const fs::path& dir = require_out_dir(common, "synth");
  if (opts.models < 1 || opts.items < 2) {
    throw Error(ErrorCode::kConfigError, "synth needs --models >= 1 and --items >= 2");
  }
  for (const auto& [name, contents] :
       synth_fixture({common.seed, opts.models, opts.items})) {
    write_file(dir / name, contents);
    io.log << (dir / name).string() << "\n";
  }
}

}  // namespace posterq::cli
