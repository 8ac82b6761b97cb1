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

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cli/commands.h"
#include "posterq/version.h"

namespace {

using posterq::cli::CommonOptions;
using posterq::cli::OutputFormat;

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config, "JSON config file");
  cmd->add_option("--out", common.out, "Output file or directory");
  cmd->add_option("--format", common.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"json", OutputFormat::kJson},
                                              {"csv", OutputFormat::kCsv},
                                              {"md", OutputFormat::kMd}}));
  cmd->add_option("--seed", common.seed, "Seed for synthetic fixtures");
  cmd->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = posterq::cli;
  CLI::App app{"posterq: poster quality evaluation toolbox"};
  app.set_version_flag("--version", std::string(posterq::kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  cli::ParseOptions parse;
  cli::RewardOptions reward;
  cli::EvalOptions eval;
  cli::SelectOptionsCli select;
  cli::StatsOptions stats;
  cli::TextMetricsOptions text;
  cli::FidelityOptions fidelity;
  cli::BenchReportOptions bench;
  cli::SynthOptions synth;

  auto* c_parse = app.add_subcommand("parse", "Validate raw model outputs");
  c_parse->add_option("--in", parse.input, "JSONL of {id, raw}")->required();

  auto* c_reward = app.add_subcommand("reward", "Score raw outputs against ground truth");
  c_reward->add_option("--in", reward.input, "JSONL of {id, raw, gt_scores?}")->required();
  c_reward->add_option("--gt", reward.gt, "Annotation JSONL for rows without gt_scores");
  c_reward->add_flag("--advantages", reward.advantages,
                     "Standardize rewards within groups of rows sharing an id");

  auto* c_eval = app.add_subcommand("eval", "Correlation and accuracy against ground truth");
  c_eval->add_option("--pred", eval.pred, "JSONL of {id, model?, scores}")->required();
  c_eval->add_option("--gt", eval.gt, "Annotation JSONL")->required();
  c_eval->add_option("--model", eval.default_model, "Model name for rows without one");

  auto* c_select = app.add_subcommand("select-hard", "Source-stratified hard subset");
  c_select->add_option("--pred", select.pred, "JSONL of {id, scores}")->required();
  c_select->add_option("--gt", select.gt, "Annotation JSONL")->required();
  c_select->add_option("--target", select.target, "Subset size");
  c_select->add_flag("--global", select.global, "Rank all samples together");
  c_select->add_flag("--fill-remainder", select.fill_remainder,
                     "Top up the floor remainder from the next hardest samples");

  auto* c_stats = app.add_subcommand("stats", "Dataset analytics");
  c_stats->add_option("--gt", stats.gt, "Annotation JSONL")->required();
  c_stats->add_option("--ratings", stats.ratings, "JSONL of {unit, coder, scores}");
  c_stats->add_option("--edits", stats.edits, "JSONL of {id, original, edited}");

  auto* c_text = app.add_subcommand("text-metrics", "Phrase F1 and character similarity");
  c_text->add_option("--in", text.input, "Text case JSONL")->required();

  auto* c_fid = app.add_subcommand("fidelity", "Subject fidelity from precomputed features");
  c_fid->add_option("--in", fidelity.input, "Feature JSONL")->required();

  auto* c_bench = app.add_subcommand("bench-report", "Merged per-model benchmark report");
  c_bench->add_option("--human", bench.human, "Human score JSONL");
  c_bench->add_option("--evaluator", bench.evaluator, "Evaluator score JSONL");
  c_bench->add_option("--text", bench.text, "Text case JSONL");
  c_bench->add_option("--fidelity", bench.fidelity, "Feature JSONL");
  c_bench->add_option("--model", bench.default_model, "Model name for rows without one");

  auto* c_synth = app.add_subcommand("synth", "Write a synthetic fixture set");
  c_synth->add_option("--models", synth.models, "Number of models");
  c_synth->add_option("--items", synth.items, "Number of annotated items");

  for (CLI::App* sub : app.get_subcommands({})) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  const cli::Streams io{std::cout, std::cerr};
  try {
    if (*c_parse) cli::cmd_parse(common, parse, io);
    if (*c_reward) cli::cmd_reward(common, reward, io);
    if (*c_eval) cli::cmd_eval(common, eval, io);
    if (*c_select) cli::cmd_select_hard(common, select, io);
    if (*c_stats) cli::cmd_stats(common, stats, io);
    if (*c_text) cli::cmd_text_metrics(common, text, io);
    if (*c_fid) cli::cmd_fidelity(common, fidelity, io);
    if (*c_bench) cli::cmd_bench_report(common, bench, io);
    if (*c_synth) cli::cmd_synth(common, synth, io);
  } catch (const posterq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitFatal;
  }
  std::cout.flush();
  return cli::kExitOk;
}
