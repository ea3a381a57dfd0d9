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

#include "cepfilt/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.h"

namespace cepfilt {
namespace {

Grid random_grid(std::size_t rows, std::size_t cols, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  Grid g(rows, cols);
  for (double& v : g.values()) v = u(rng);
  return g;
}

std::vector<double> flat(const Grid& g) { return {g.values().begin(), g.values().end()}; }

TEST(Snr, IdenticalIsInfinite) {
  const Grid r = random_grid(4, 4, 1);
  EXPECT_EQ(snr(r, r), std::numeric_limits<double>::infinity());
}

TEST(Snr, ZeroTestGivesZeroDecibels) {
  const Grid r = random_grid(4, 4, 2);
  EXPECT_NEAR(snr(r, Grid(4, 4, 0.0)), 0.0, 1e-12);
}

TEST(Snr, ScaleCovariant) {
  const Grid r = random_grid(6, 5, 3);
  const Grid n = random_grid(6, 5, 4);
  Grid r2 = r, n2 = n;
  for (double& v : r2.values()) v *= 7.5;
  for (double& v : n2.values()) v *= 7.5;
  EXPECT_NEAR(snr(r2, n2), snr(r, n), 1e-12);
}

TEST(Snr, RejectsSilentReference) {
  EXPECT_THROW(snr(Grid(3, 3, 0.0), Grid(3, 3, 1.0)), std::invalid_argument);
}

TEST(Lsd, IdentityAndUniformRatio) {
  const Grid r = random_grid(4, 4, 5);
  EXPECT_EQ(lsd(r, r), 0.0);
  Grid n = r;
  for (double& v : n.values()) v *= std::exp(1.0);
  // Every cell differs by exactly one natural-log unit.
  EXPECT_NEAR(lsd(r, n), 1.0 / std::sqrt(16.0), 1e-12);
  EXPECT_NEAR(lsd(r, n, kMetricFloor, LsdNormalization::kPerCellRms), 1.0, 1e-12);
}

TEST(Lsd, Symmetric) {
  const Grid r = random_grid(7, 3, 6);
  const Grid n = random_grid(7, 3, 7);
  EXPECT_NEAR(lsd(r, n), lsd(n, r), 1e-15);
}

TEST(ItakuraSaito, IdentityAndKnownRatio) {
  const Grid r = random_grid(4, 4, 8);
  EXPECT_EQ(itakura_saito(r, r), 0.0);
  Grid one(1, 1, 1.0);
  Grid half(1, 1, std::exp(-0.5));  // ratio x = e
  EXPECT_NEAR(itakura_saito(one, half), std::exp(1.0) - 2.0, 1e-12);
}

TEST(ItakuraSaito, Asymmetric) {
  const Grid r(1, 1, 1.0);
  const Grid n(1, 1, 2.0);
  EXPECT_GT(std::abs(itakura_saito(r, n) - itakura_saito(n, r)), 0.1);
}

TEST(Metrics, NonNegativeOnRandomInputs) {
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const Grid r = random_grid(5, 9, seed);
    const Grid n = random_grid(5, 9, seed + 1000);
    EXPECT_GE(lsd(r, n), 0.0);
    EXPECT_GE(itakura_saito(r, n), 0.0);
  }
}

TEST(Metrics, MatchElementwiseOracle) {
  for (std::size_t size : {4u, 8u}) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      const Grid r = random_grid(size, size, seed);
      const Grid n = random_grid(size, size, seed + 77);
      const MetricReport m = evaluate(r, n);
      const double s = oracle::snr_db(flat(r), flat(n));
      const double l = oracle::lsd(flat(r), flat(n), size, size);
      const double i = oracle::itakura_saito(flat(r), flat(n), size, size);
      EXPECT_NEAR(m.snr_db, s, 1e-12 * std::abs(s));
      EXPECT_NEAR(m.lsd, l, 1e-12 * l);
      EXPECT_NEAR(m.is_distance, i, 1e-12 * i);
      EXPECT_EQ(m.num_bins, size);
      EXPECT_EQ(m.num_frames, size);
    }
  }
}

TEST(Metrics, FloorAppliesToZeros) {
  const Grid r(2, 2, 1.0);
  const Grid z(2, 2, 0.0);
  const double d = std::log(1.0) - std::log(kMetricFloor);
  EXPECT_NEAR(lsd(r, z), std::sqrt(4.0 * d * d) / 4.0, 1e-9);
  EXPECT_TRUE(std::isfinite(itakura_saito(r, z)));
}

TEST(Metrics, ShapeMismatchThrows) {
  EXPECT_THROW(snr(Grid(2, 3, 1.0), Grid(3, 2, 1.0)), std::invalid_argument);
  EXPECT_THROW(lsd(Grid(2, 3, 1.0), Grid(2, 4, 1.0)), std::invalid_argument);
  EXPECT_THROW(itakura_saito(Grid(1, 3, 1.0), Grid(2, 3, 1.0)), std::invalid_argument);
  EXPECT_THROW(evaluate(Grid(), Grid()), std::invalid_argument);
}

}  // namespace
}  // namespace cepfilt
