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

#include "cli/config.h"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <cmath>
#include <memory>

#include "posterq/error.h"

namespace posterq::cli {
namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfigError, msg);
}

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string_view format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kMd: return "md";
  }
  return "json";
}

std::optional<OutputFormat> format_from_name(std::string_view name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "md") return OutputFormat::kMd;
  return std::nullopt;
}

void ToolConfig::validate() const {
  reward.validate();
  retry.validate();
  if (k_values.empty()) config_error("metrics.k must list at least one value");
  for (double k : k_values) {
    if (!(std::isfinite(k) && k > 0.0)) config_error("metrics.k values must be > 0");
  }
  if (!(weakest_link_threshold > 1.0 && weakest_link_threshold < 5.0)) {
    config_error("weakest_link_threshold must be in (1, 5)");
  }
  if (histogram_bins < 1) config_error("histogram_bins must be >= 1");
}

ToolConfig config_from_json(const Json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  ToolConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "reward") {
      cfg.reward = reward_config_from_json(value);
    } else if (key == "metrics") {
      if (!value.is_object()) config_error("'metrics' must be an object");
      for (const auto& [mkey, mval] : value.items()) {
        if (mkey != "k") config_error("unknown metrics key '" + mkey + "'");
        if (!mval.is_array()) config_error("metrics.k must be an array");
        cfg.k_values.clear();
        for (const Json& k : mval) cfg.k_values.push_back(number(k, "metrics.k"));
      }
    } else if (key == "weakest_link_threshold") {
      cfg.weakest_link_threshold = number(value, key);
    } else if (key == "histogram_bins") {
      if (!value.is_number_integer()) config_error("'histogram_bins' must be an integer");
      cfg.histogram_bins = value.get<int>();
    } else if (key == "tag_taxonomy") {
      if (value.is_null()) {
        cfg.tag_taxonomy.reset();
      } else if (value.is_string()) {
        cfg.tag_taxonomy = value.get<std::string>();
      } else {
        config_error("'tag_taxonomy' must be a path or null");
      }
    } else if (key == "selection") {
      if (!value.is_object()) config_error("'selection' must be an object");
      for (const auto& [skey, sval] : value.items()) {
        if (skey == "target") {
          if (!sval.is_number_unsigned()) config_error("selection.target must be a non-negative integer");
          cfg.selection_target = sval.get<std::uint64_t>();
        } else if (skey == "mode") {
          const std::string mode = sval.is_string() ? sval.get<std::string>() : "";
          if (mode == "stratified") {
            cfg.selection_mode = SelectionMode::kStratified;
          } else if (mode == "global") {
            cfg.selection_mode = SelectionMode::kGlobal;
          } else {
            config_error("selection.mode must be 'stratified' or 'global'");
          }
        } else if (skey == "fill_remainder") {
          if (!sval.is_boolean()) config_error("selection.fill_remainder must be a boolean");
          cfg.fill_remainder = sval.get<bool>();
        } else {
          config_error("unknown selection key '" + skey + "'");
        }
      }
    } else if (key == "retry") {
      if (!value.is_object()) config_error("'retry' must be an object");
      for (const auto& [rkey, rval] : value.items()) {
        if (rkey != "max_attempts" || !rval.is_number_integer()) {
          config_error("retry accepts only an integer 'max_attempts'");
        }
        cfg.retry.max_attempts = rval.get<int>();
      }
    } else if (key == "format") {
      const auto f = value.is_string() ? format_from_name(value.get<std::string>())
                                       : std::nullopt;
      if (!f) config_error("'format' must be json, csv or md");
      cfg.format = *f;
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

OrderedJson config_to_json(const ToolConfig& cfg) {
  OrderedJson j;
  j["reward"] = reward_config_to_json(cfg.reward);
  j["metrics"]["k"] = cfg.k_values;
  j["weakest_link_threshold"] = cfg.weakest_link_threshold;
  j["histogram_bins"] = cfg.histogram_bins;
  j["tag_taxonomy"] = cfg.tag_taxonomy ? OrderedJson(*cfg.tag_taxonomy) : OrderedJson();
  j["selection"]["target"] = cfg.selection_target;
  j["selection"]["mode"] =
      cfg.selection_mode == SelectionMode::kGlobal ? "global" : "stratified";
  j["selection"]["fill_remainder"] = cfg.fill_remainder;
  j["retry"]["max_attempts"] = cfg.retry.max_attempts;
  j["format"] = std::string(format_name(cfg.format));
  return j;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    config_error(e.what());
  }
  const Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) config_error("config '" + path.string() + "' is not valid JSON");
  return config_from_json(j);
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string config_hash(const ToolConfig& cfg) {
  return sha256_hex(config_to_json(cfg).dump());
}

std::string format_k(double k) {
  if (k == std::floor(k)) return fmt::format("{:.1f}", k);
  return fmt::format("{}", k);
}

}  // namespace posterq::cli
