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

#ifndef POSTERQ_TOOLS_CLI_COMMANDS_H_
#define POSTERQ_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cli/config.h"
#include "posterq/error.h"

namespace posterq::cli {

namespace fs = std::filesystem;

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;   // IO or schema failure
inline constexpr int kExitConfig = 2;  // configuration or usage error

int exit_code_for(ErrorCode code);

// Flags shared by every subcommand.
struct CommonOptions {
  std::optional<fs::path> config;
  std::optional<fs::path> out;
  std::optional<OutputFormat> format;
  std::uint64_t seed = 0;  // synthetic fixtures only
  int threads = 1;
};

// Config file (or defaults) with flag overrides applied and validated.
ToolConfig effective_config(const CommonOptions& common);

// Primary output goes to `out` (or the --out file); human-facing summaries
// go to `log`.
struct Streams {
  std::ostream& out;
  std::ostream& log;
};

struct ParseOptions {
  fs::path input;  // JSONL {id, raw}; repeated ids are successive attempts
};
void cmd_parse(const CommonOptions& common, const ParseOptions& opts, Streams io);

struct RewardOptions {
  fs::path input;  // JSONL {id, raw, gt_scores?}
  std::optional<fs::path> gt;
  bool advantages = false;  // rows sharing an id form one group
};
void cmd_reward(const CommonOptions& common, const RewardOptions& opts, Streams io);

struct EvalOptions {
  fs::path pred;  // JSONL {id, model?, scores}
  fs::path gt;
  std::string default_model = "model";
};
void cmd_eval(const CommonOptions& common, const EvalOptions& opts, Streams io);

struct SelectOptionsCli {
  fs::path pred;
  fs::path gt;
  std::optional<std::uint64_t> target;
  bool global = false;
  bool fill_remainder = false;
};
void cmd_select_hard(const CommonOptions& common, const SelectOptionsCli& opts,
                     Streams io);

struct StatsOptions {
  fs::path gt;
  std::optional<fs::path> ratings;  // JSONL {unit, coder, scores}
  std::optional<fs::path> edits;    // JSONL {id, original, edited}
};
// With --format csv, --out names a directory that receives one file per table.
void cmd_stats(const CommonOptions& common, const StatsOptions& opts, Streams io);

struct TextMetricsOptions {
  fs::path input;
};
void cmd_text_metrics(const CommonOptions& common, const TextMetricsOptions& opts,
                      Streams io);

struct FidelityOptions {
  fs::path input;
};
void cmd_fidelity(const CommonOptions& common, const FidelityOptions& opts,
                  Streams io);

struct BenchReportOptions {
  std::optional<fs::path> human;
  std::optional<fs::path> evaluator;
  std::optional<fs::path> text;
  std::optional<fs::path> fidelity;
  std::string default_model = "model";
};
// --out names a directory: one <model>.json per model, summary.json, and
// report.md or report.csv for the md and csv formats.
void cmd_bench_report(const CommonOptions& common, const BenchReportOptions& opts,
                      Streams io);

struct SynthOptions {
  int models = 5;
  int items = 40;
};
// Writes a deterministic fixture set (see synth.h) into the --out directory.
void cmd_synth(const CommonOptions& common, const SynthOptions& opts, Streams io);

}  // namespace posterq::cli

#endif  // POSTERQ_TOOLS_CLI_COMMANDS_H_
