// Copyright 2026 The cepfilt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cepfilt/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cepfilt/errors.h"

namespace cepfilt {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& origin) {
  KeyValueConfig config;
  config.origin_ = origin;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": empty key");
    }
    if (config.entries_.contains(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": duplicate key '" + key + "'");
    }
    config.entries_.emplace(key, value);
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse(in, path.string());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& KeyValueConfig::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(origin_ + ": missing config key '" + key + "'");
  }
  return it->second;
}

double KeyValueConfig::number(const std::string& key) const {
  const std::string& text = require(key);
  const auto v = parse_number(text);
  if (!v) {
    throw ConfigError(origin_ + ": key '" + key + "' expects a number, got '" +
                      text + "'");
  }
  return *v;
}

double KeyValueConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long KeyValueConfig::integer(const std::string& key) const {
  const std::string& text = require(key);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(origin_ + ": key '" + key + "' expects an integer, got '" +
                      text + "'");
  }
  return v;
}

long long KeyValueConfig::integer_or(const std::string& key,
                                     long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<double> KeyValueConfig::number_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(require(key))) {
    const auto v = parse_number(item);
    if (!v) {
      throw ConfigError(origin_ + ": key '" + key +
                        "' expects a comma-separated list of numbers");
    }
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> KeyValueConfig::string_list(const std::string& key) const {
  return split_list(require(key));
}

PipelineConfig pipeline_config_from(const KeyValueConfig& config) {
  PipelineConfig cfg;
  const long long window = config.integer("window");
  const long long hop = config.integer("hop");
  if (window <= 0 || hop <= 0) {
    throw ConfigError("window and hop must be positive integers");
  }
  cfg.stft.window_size = static_cast<std::size_t>(window);
  cfg.stft.hop_size = static_cast<std::size_t>(hop);
  cfg.log_floor = config.number("log_floor");

  cfg.filter.f_pre = config.number("f_pre");
  cfg.filter.f_min1 = config.number("f_min1");
  cfg.filter.f_max1 = config.number("f_max1");
  cfg.filter.f_min2 = config.number("f_min2");
  cfg.filter.f_max2 = config.number("f_max2");
  if (config.require("i_mid") == "auto-median") {
    cfg.filter.i_mid.reset();
  } else {
    cfg.filter.i_mid = config.number("i_mid");
  }

  const std::string& tau_min = config.require("tau_min");
  const std::string& tau_max = config.require("tau_max");
  if (tau_max == "auto") {
    cfg.scenario = scenario_from(config);
    if (tau_min != "auto") cfg.tau_min = config.number("tau_min");
  } else {
    if (tau_min == "auto") {
      throw ConfigError("tau_min = auto requires tau_max = auto");
    }
    cfg.band = QuefrencyBand{config.number("tau_min"), config.number("tau_max")};
  }
  try {
    validate(cfg.filter);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

MotionScenario scenario_from(const KeyValueConfig& config) {
  MotionScenario s;
  s.z_s = config.number("z_s");
  s.z_r = config.number("z_r");
  s.c = config.number("c");
  s.reflection_coefficient = config.number_or("reflection_coefficient", -1.0);
  s.v_s = config.number_or("v_s", 0.0);
  if (const auto r0 = config.get("r0"); r0 && *r0 != "auto") {
    s.r0 = config.number("r0");
  }
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace cepfilt
