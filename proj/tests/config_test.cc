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

#include <gtest/gtest.h>

#include <sstream>

#include "cepfilt/errors.h"

namespace cepfilt {
namespace {

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "test.cfg");
}

const char* kFull = R"(
# pipeline
window = 1024
hop = 256
log_floor = 1e-10
f_pre = 1
i_mid = auto-median
f_min1 = 0.05
f_max1 = 0.5
f_min2 = 2
f_max2 = 15
tau_min = auto
tau_max = auto
z_s = 100
z_r = 0.5
c = 343
)";

TEST(KeyValueConfig, ParsesValuesCommentsAndLists) {
  const KeyValueConfig c = parse(
      "a = 1.5  # trailing comment\n"
      "\n"
      "  name=hello world \n"
      "list = 10, 20 ,30\n"
      "n = -7\n");
  EXPECT_DOUBLE_EQ(c.number("a"), 1.5);
  EXPECT_EQ(c.require("name"), "hello world");
  EXPECT_EQ(c.number_list("list"), (std::vector<double>{10, 20, 30}));
  EXPECT_EQ(c.integer("n"), -7);
  EXPECT_EQ(c.number_or("missing", 3.0), 3.0);
  EXPECT_FALSE(c.get("missing").has_value());
}

TEST(KeyValueConfig, RejectsMalformedInput) {
  EXPECT_THROW(parse("just words\n"), ConfigError);
  EXPECT_THROW(parse("= 3\n"), ConfigError);
  EXPECT_THROW(parse("a = 1\na = 2\n"), ConfigError);
  const KeyValueConfig c = parse("a = abc\nb = 1.5\n");
  EXPECT_THROW(c.number("a"), ConfigError);
  EXPECT_THROW(c.integer("b"), ConfigError);
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/x.cfg"), ConfigError);
}

TEST(KeyValueConfig, MissingKeyIsNamed) {
  const KeyValueConfig c = parse("a = 1\n");
  try {
    c.require("f_max2");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'f_max2'"), std::string::npos);
  }
}

TEST(PipelineConfigFrom, FullConfigWithAutoBand) {
  const PipelineConfig cfg = pipeline_config_from(parse(kFull));
  EXPECT_EQ(cfg.stft.window_size, 1024u);
  EXPECT_EQ(cfg.stft.hop_size, 256u);
  EXPECT_DOUBLE_EQ(cfg.log_floor, 1e-10);
  EXPECT_FALSE(cfg.filter.i_mid.has_value());
  EXPECT_FALSE(cfg.band.has_value());
  ASSERT_TRUE(cfg.scenario.has_value());
  EXPECT_DOUBLE_EQ(cfg.scenario->z_s, 100.0);
  EXPECT_DOUBLE_EQ(cfg.scenario->reflection_coefficient, -1.0);
  EXPECT_FALSE(cfg.tau_min.has_value());
}

TEST(PipelineConfigFrom, ExplicitBandAndMidpoint) {
  KeyValueConfig c = parse(kFull);
  c.set("tau_min", "0.0001");
  c.set("tau_max", "0.002");
  c.set("i_mid", "0.25");
  const PipelineConfig cfg = pipeline_config_from(c);
  ASSERT_TRUE(cfg.band.has_value());
  EXPECT_DOUBLE_EQ(cfg.band->tau_min, 0.0001);
  EXPECT_DOUBLE_EQ(cfg.band->tau_max, 0.002);
  EXPECT_DOUBLE_EQ(cfg.filter.i_mid.value(), 0.25);
}

TEST(PipelineConfigFrom, EveryRequiredKeyIsEnforced) {
  for (const char* key : {"window", "hop", "log_floor", "f_pre", "i_mid", "f_min1",
                          "f_max1", "f_min2", "f_max2", "tau_min", "tau_max"}) {
    std::string text;
    std::istringstream in(kFull);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind(std::string(key) + " ", 0) != 0) text += line + "\n";
    }
    try {
      pipeline_config_from(parse(text));
      ADD_FAILURE() << "no error without " << key;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(key), std::string::npos) << e.what();
    }
  }
}

TEST(PipelineConfigFrom, RejectsInconsistentValues) {
  KeyValueConfig c = parse(kFull);
  c.set("f_max1", "3");
  EXPECT_THROW(pipeline_config_from(c), ConfigError);
  c = parse(kFull);
  c.set("tau_max", "0.002");
  EXPECT_THROW(pipeline_config_from(c), ConfigError);  // tau_min = auto
  c = parse(kFull);
  c.set("hop", "0");
  EXPECT_THROW(pipeline_config_from(c), ConfigError);
  c = parse(kFull);
  c.set("z_r", "-1");
  EXPECT_THROW(pipeline_config_from(c), ConfigError);
}

TEST(ScenarioFrom, DefaultsAndOverrides) {
  KeyValueConfig c = parse("z_s = 50\nz_r = 2\nc = 1500\n");
  MotionScenario s = scenario_from(c);
  EXPECT_DOUBLE_EQ(s.z_s, 50.0);
  EXPECT_DOUBLE_EQ(s.c, 1500.0);
  EXPECT_DOUBLE_EQ(s.r0, 0.0);
  EXPECT_DOUBLE_EQ(s.v_s, 0.0);
  EXPECT_DOUBLE_EQ(s.reflection_coefficient, -1.0);
  c.set("r0", "-20");
  c.set("reflection_coefficient", "0.4");
  s = scenario_from(c);
  EXPECT_DOUBLE_EQ(s.r0, -20.0);
  EXPECT_DOUBLE_EQ(s.reflection_coefficient, 0.4);
  EXPECT_THROW(scenario_from(parse("z_s = 50\nz_r = 2\n")), ConfigError);
}

}  // namespace
}  // namespace cepfilt
