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

#include "cepfilt/motion_sim.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "cepfilt/cepstral.h"
#include "cepfilt/spectral.h"

namespace cepfilt {
namespace {

constexpr double kPi = std::numbers::pi;

TimeSignal tone(double f, double amp, std::size_t n, int fs) {
  TimeSignal s;
  s.sample_rate = fs;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] = amp * std::sin(2.0 * kPi * f * double(i) / fs);
  }
  return s;
}

double rms(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / double(x.size()));
}

TEST(Delays, HandValuesAtClosestApproach) {
  MotionScenario s;
  EXPECT_NEAR(direct_delay(s, 0.0), 99.5 / 343.0, 1e-15);
  EXPECT_NEAR(reflected_delay(s, 0.0), 100.5 / 343.0, 1e-15);
  EXPECT_NEAR(reflected_delay(s, 0.0), 0.293003, 1e-6);
  MotionScenario same;
  same.z_s = same.z_r = 2.0;
  EXPECT_EQ(direct_delay(same, 0.0), 0.0);
}

TEST(Delays, ReflectedNeverShorterAndGapAtZeroRange) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.1, 200.0);
  std::uniform_real_distribution<double> vel(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    MotionScenario s;
    s.z_s = u(rng);
    s.z_r = u(rng);
    s.c = 300.0 + u(rng);
    s.r0 = vel(rng) * 5.0;
    s.v_s = vel(rng);
    for (double t = -10.0; t <= 10.0; t += 0.5) {
      EXPECT_GE(reflected_delay(s, t), direct_delay(s, t));
    }
    MotionScenario at_zero = s;
    at_zero.r0 = 0.0;
    const double gap = reflected_delay(at_zero, 0.0) - direct_delay(at_zero, 0.0);
    EXPECT_NEAR(gap, 2.0 * std::min(s.z_s, s.z_r) / s.c, 1e-12);
  }
}

TEST(Delays, ConvexWithMinimumAtClosestApproach) {
  MotionScenario s;
  s.r0 = -250.0;
  s.v_s = 50.0;
  const double t_cpa = 5.0;
  const double h = 1e-3;
  for (double t = 0.0; t <= 10.0; t += 0.25) {
    for (auto fn : {direct_delay, reflected_delay}) {
      const double second = fn(s, t + h) - 2.0 * fn(s, t) + fn(s, t - h);
      EXPECT_GT(second, 0.0);
      if (std::abs(t - t_cpa) > 1e-9) EXPECT_GT(fn(s, t), fn(s, t_cpa));
    }
  }
}

TEST(Delays, RejectInvalidGeometry) {
  MotionScenario s;
  s.z_s = 0.0;
  EXPECT_THROW(direct_delay(s, 0.0), std::invalid_argument);
  s = {};
  s.c = -1.0;
  EXPECT_THROW(reflected_delay(s, 0.0), std::invalid_argument);
  s = {};
  s.reflection_coefficient = 1.5;
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(TimeVaryingDelay, IntegerShiftIsExact) {
  TimeSignal x;
  x.sample_rate = 8000;
  std::mt19937 rng(3);
  std::normal_distribution<double> d;
  for (int i = 0; i < 1000; ++i) x.samples.push_back(d(rng));
  const int k = 37;
  const TimeSignal y = apply_time_varying_delay(x, [&](double) { return k / 8000.0; });
  ASSERT_EQ(y.size(), x.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    EXPECT_EQ(y.samples[n], n < k ? 0.0 : x.samples[n - k]);
  }
  const TimeSignal same = apply_time_varying_delay(x, [](double) { return 0.0; });
  EXPECT_EQ(same.samples, x.samples);
}

TEST(TimeVaryingDelay, FractionalDelayOfSlowToneIsAccurate) {
  const TimeSignal x = tone(200.0, 1.0, 8000, 8000);
  const double delay = 12.3 / 8000.0;
  const TimeSignal y = apply_time_varying_delay(x, [&](double) { return delay; });
  for (std::size_t n = 100; n < 8000; ++n) {
    EXPECT_NEAR(y.samples[n], std::sin(2.0 * kPi * 200.0 * (double(n) / 8000 - delay)),
                1e-4);
  }
}

TEST(TimeVaryingDelay, AllSilentWhenDelayTooLong) {
  const TimeSignal x = tone(100.0, 1.0, 100, 1000);
  const TimeSignal y = apply_time_varying_delay(x, [](double) { return 10.0; });
  EXPECT_EQ(y.size(), x.size());
  for (double v : y.samples) EXPECT_EQ(v, 0.0);
}

// Peak-bin frequency averaged over steady frames.
double peak_frequency(const TimeSignal& s) {
  const Spectrogram spec = stft(s, {4096, 1024});
  const std::size_t t0 = spec.num_frames() / 4, t1 = 3 * spec.num_frames() / 4;
  double acc = 0.0;
  for (std::size_t t = t0; t < t1; ++t) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < spec.num_bins(); ++f) {
      if (spec.magnitude(f, t) > spec.magnitude(best, t)) best = f;
    }
    acc += double(best) * spec.bin_spacing();
  }
  return acc / double(t1 - t0);
}

TEST(TimeVaryingDelay, LinearDriftShiftsToneFrequency) {
  const int fs = 32000;
  const double f0 = 3000.0;
  const TimeSignal x = tone(f0, 0.5, 5 * fs, fs);
  for (double beta : {0.01, 0.05}) {
    const TimeSignal y = apply_time_varying_delay(x, [&](double t) { return beta * t; });
    const double bin = double(fs) / 4096.0;
    EXPECT_NEAR(peak_frequency(y), f0 * (1.0 - beta), bin) << beta;
    EXPECT_GT(std::abs(peak_frequency(y) - f0), 0.9 * beta * f0 - bin);
  }
}

TEST(SynthesizeTriple, StaticSourceDirectMatchesReferenceSpectrum) {
  const int fs = 32000;
  TimeSignal src = tone(250.0, 0.6, fs * 2, fs);
  const TimeSignal t2 = tone(1125.0, 0.3, fs * 2, fs);
  for (std::size_t i = 0; i < src.size(); ++i) src.samples[i] += t2.samples[i];
  MotionScenario s;  // r0 = 0, v = 0
  const SimulatedTriple tr = synthesize_triple(src, s);
  const Spectrogram r = stft(tr.reference);
  const Spectrogram a = stft(tr.direct);
  const auto skip = static_cast<std::size_t>(
      std::ceil(direct_delay(s, 0.0) * fs / r.hop_size)) + 4;
  for (std::size_t t = skip; t + 4 < r.num_frames(); ++t) {
    for (std::size_t f : {8u, 36u}) {  // 250 Hz and 1125 Hz bins
      EXPECT_NEAR(a.magnitude(f, t) / r.magnitude(f, t), 1.0, 1e-3) << t;
    }
  }
}

TEST(SynthesizeTriple, ZeroReflectionCollapsesToDirect) {
  TimeSignal src;
  src.sample_rate = 8000;
  std::mt19937 rng(9);
  std::normal_distribution<double> d;
  for (int i = 0; i < 16000; ++i) src.samples.push_back(d(rng));
  MotionScenario s;
  s.r0 = -50.0;
  s.v_s = 40.0;
  s.reflection_coefficient = 0.0;
  const SimulatedTriple tr = synthesize_triple(src, s);
  EXPECT_EQ(tr.combined.samples, tr.direct.samples);
  EXPECT_EQ(tr.reference.size(), src.size());
  EXPECT_EQ(tr.direct.size(), src.size());
}

TEST(SynthesizeTriple, ReferenceIsUndelayedSpreadingLoss) {
  const TimeSignal src = tone(100.0, 1.0, 4000, 8000);
  MotionScenario s;
  s.r0 = -30.0;
  s.v_s = 20.0;
  const SimulatedTriple tr = synthesize_triple(src, s);
  for (std::size_t n = 0; n < src.size(); n += 97) {
    const double r1 = s.c * direct_delay(s, double(n) / 8000.0);
    EXPECT_NEAR(tr.reference.samples[n], src.samples[n] / r1, 1e-15);
  }
}

TEST(SynthesizeTriple, AmplitudeFollowsInverseDistance) {
  const int fs = 16000;
  const TimeSignal src = tone(300.0, 1.0, 3 * fs, fs);
  MotionScenario near;
  near.r0 = 40.0;
  near.z_s = 10.0;
  near.z_r = 1.0;
  MotionScenario far = near;
  far.r0 *= 2.0;
  far.z_s *= 2.0;
  far.z_r *= 2.0;
  const SimulatedTriple a = synthesize_triple(src, near);
  const SimulatedTriple b = synthesize_triple(src, far);
  const std::size_t lo = fs, hi = 3 * fs - 100;
  const std::span<const double> na(a.direct.samples.data() + lo, hi - lo);
  const std::span<const double> fa(b.direct.samples.data() + lo, hi - lo);
  EXPECT_NEAR(rms(fa) / rms(na), 0.5, 0.01);
}

// Mean over frames of |cepstrum| at the predicted rahmonic bin (best of
// +-1 bins) divided by the in-band median. `offset` is the time of the first
// sample of `x` on the scenario clock.
double ridge_ratio(const TimeSignal& x, const MotionScenario& s, double offset) {
  const Cepstrogram c = cepstrogram_forward(stft(x));
  const BinRange bins = band_bins(default_band(s, c), c);
  const double fs = x.sample_rate;
  double acc = 0.0;
  std::size_t frames = 0;
  std::vector<double> col;
  for (std::size_t t = 8; t + 8 < c.num_frames(); ++t) {
    const double centre = offset + (double(t) * 256 + 512) / fs;
    // Lag between the two received copies: the path difference divided by
    // (1 - d sigma1/dt), since both delays are read on the receiver clock.
    const double h = 1e-3;
    const double rate = (direct_delay(s, centre + h) - direct_delay(s, centre - h)) / (2 * h);
    const double lag = (reflected_delay(s, centre) - direct_delay(s, centre)) / (1.0 - rate);
    const auto q = static_cast<std::size_t>(std::lround(lag * fs));
    if (q < bins.first + 1 || q + 2 > bins.last) continue;
    col.clear();
    for (std::size_t k = bins.first; k < bins.last; ++k) col.push_back(std::abs(c.values(k, t)));
    const double peak = std::max({std::abs(c.values(q - 1, t)), std::abs(c.values(q, t)),
                                  std::abs(c.values(q + 1, t))});
    std::nth_element(col.begin(), col.begin() + col.size() / 2, col.end());
    acc += peak / col[col.size() / 2];
    ++frames;
  }
  return acc / double(frames);
}

TEST(SynthesizeTriple, CombinedShowsRahmonicRidgeAbsentFromDirect) {
  const TimeSignal src = generate_broadband(10.0, 32000, 11);
  MotionScenario s;
  s.v_s = 50.0;
  s.r0 = -250.0;
  const SimulatedTriple tr = synthesize_triple(src, s);
  // Skip the initial propagation silence.
  TimeSignal a = tr.direct, b = tr.combined;
  const auto lead = static_cast<std::ptrdiff_t>(reflected_delay(s, 0.0) * 32000) + 1;
  a.samples.erase(a.samples.begin(), a.samples.begin() + lead);
  b.samples.erase(b.samples.begin(), b.samples.begin() + lead);
  const double offset = double(lead) / 32000.0;
  const double ratio_b = ridge_ratio(b, s, offset);
  const double ratio_a = ridge_ratio(a, s, offset);
  std::cout << "ridge ratio A " << ratio_a << " B " << ratio_b << "\n";
  EXPECT_GE(ratio_b, 3.0);
  EXPECT_LT(ratio_a, 3.0);
}

TEST(VelocitySweep, DefaultListProducesTenTriples) {
  const auto v = default_velocities();
  ASSERT_EQ(v.size(), 10u);
  EXPECT_EQ(v.front(), 10.0);
  EXPECT_EQ(v.back(), 100.0);
  TimeSignal src = generate_broadband(0.25, 8000, 2);
  MotionScenario base;
  base.r0 = -20.0;
  const auto sweep = velocity_sweep(src, base, v);
  ASSERT_EQ(sweep.size(), 10u);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    EXPECT_EQ(sweep[i].scenario.v_s, v[i]);
    EXPECT_EQ(sweep[i].reference.size(), src.size());
    EXPECT_EQ(sweep[i].direct.size(), src.size());
    EXPECT_EQ(sweep[i].combined.size(), src.size());
  }
  const auto again = velocity_sweep(src, base, v);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    EXPECT_EQ(again[i].combined.samples, sweep[i].combined.samples);
  }
  const double one[] = {30.0};
  EXPECT_EQ(velocity_sweep(src, base, one).size(), 1u);
  EXPECT_THROW(velocity_sweep(src, base, std::span<const double>{}),
               std::invalid_argument);
}

}  // namespace
}  // namespace cepfilt
