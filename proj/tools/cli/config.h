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

#ifndef POSTERQ_TOOLS_CLI_CONFIG_H_
#define POSTERQ_TOOLS_CLI_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posterq/io.h"
#include "posterq/output_parser.h"
#include "posterq/reward.h"

namespace posterq::cli {

enum class OutputFormat { kJson, kCsv, kMd };

std::string_view format_name(OutputFormat format);
std::optional<OutputFormat> format_from_name(std::string_view name);

enum class SelectionMode { kStratified, kGlobal };

// Effective configuration of one invocation. Loaded from a JSON file, then
// overridden by command-line flags; the result is embedded (hashed) in every
// report.
//
//   {
//     "reward": {"tau": 0.2, "lambda_score": 0.65, "alpha": 0.5,
//                "tier_penalty": 0.7, "lambda_fmt": 1.0, "group_size": 4,
//                "advantage_epsilon": 1e-8},
//     "metrics": {"k": [0.5, 1.0]},
//     "weakest_link_threshold": 3.0,
//     "histogram_bins": 8,
//     "tag_taxonomy": null,
//     "selection": {"target": 3000, "mode": "stratified",
//                   "fill_remainder": false},
//     "retry": {"max_attempts": 3},
//     "format": "json"
//   }
struct ToolConfig {
  RewardConfig reward;
  std::vector<double> k_values = {0.5, 1.0};
  double weakest_link_threshold = 3.0;
  int histogram_bins = 8;
  std::optional<std::string> tag_taxonomy;
  std::uint64_t selection_target = 3000;
  SelectionMode selection_mode = SelectionMode::kStratified;
  bool fill_remainder = false;
  RetryPolicy retry;
  OutputFormat format = OutputFormat::kJson;

  // Throws Error(kConfigError).
  void validate() const;
};

// Unknown keys are rejected with Error(kConfigError).
ToolConfig config_from_json(const Json& j);
OrderedJson config_to_json(const ToolConfig& cfg);
ToolConfig load_config(const std::filesystem::path& path);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

// Hash of the canonical JSON rendering of the config.
std::string config_hash(const ToolConfig& cfg);

// "0.5", "1.0", "0.25": at least one decimal place.
std::string format_k(double k);

}  // namespace posterq::cli

#endif  // POSTERQ_TOOLS_CLI_CONFIG_H_
