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

#ifndef CEPFILT_CONFIG_H_
#define CEPFILT_CONFIG_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cepfilt/motion_sim.h"
#include "cepfilt/pipeline.h"

namespace cepfilt {

// Flat `key = value` text. Blank lines and text after '#' are ignored; keys
// are case-sensitive and may not repeat. Every accessor that needs a value
// throws ConfigError naming the key when it is absent or unparsable.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& origin = "config");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  const std::string& require(const std::string& key) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer_or(const std::string& key, long long fallback) const;
  std::vector<double> number_list(const std::string& key) const;
  std::vector<std::string> string_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
};

// Pipeline keys: window, hop, log_floor, f_pre, i_mid (number or
// "auto-median"), f_min1, f_max1, f_min2, f_max2, tau_min (seconds or
// "auto"), tau_max (seconds or "auto"). All are required. tau_max = auto
// derives the band from the scenario keys.
PipelineConfig pipeline_config_from(const KeyValueConfig& config);

// Scenario keys: z_s, z_r, c (required), reflection_coefficient (default -1),
// v_s (default 0), r0 (default 0; "auto" is handled by the experiment
// driver and reads as 0 here).
MotionScenario scenario_from(const KeyValueConfig& config);

}  // namespace cepfilt

#endif  // CEPFILT_CONFIG_H_
