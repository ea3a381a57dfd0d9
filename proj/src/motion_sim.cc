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

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace cepfilt {
namespace {

// Positions within this distance of an integer are treated as exact sample
// offsets, so integer delays reproduce the input bit for bit.
constexpr double kIntegerSnap = 1e-9;

double range_at(const MotionScenario& s, double t) { return s.r0 + s.v_s * t; }

}  // namespace

void validate(const MotionScenario& s) {
  if (!(s.z_s > 0.0) || !(s.z_r > 0.0) || !(s.c > 0.0)) {
    throw std::invalid_argument("scenario requires z_s, z_r, c > 0");
  }
  if (!(std::abs(s.reflection_coefficient) <= 1.0)) {
    throw std::invalid_argument("|reflection_coefficient| must be <= 1");
  }
  if (!std::isfinite(s.r0) || !std::isfinite(s.v_s)) {
    throw std::invalid_argument("r0 and v_s must be finite");
  }
}

double direct_delay(const MotionScenario& s, double t) {
  validate(s);
  return std::hypot(range_at(s, t), s.z_s - s.z_r) / s.c;
}

double reflected_delay(const MotionScenario& s, double t) {
  validate(s);
  return std::hypot(range_at(s, t), s.z_s + s.z_r) / s.c;
}

TimeSignal apply_time_varying_delay(
    const TimeSignal& signal, const std::function<double(double)>& delay) {
  if (signal.sample_rate <= 0) {
    throw std::invalid_argument("signal sample rate must be positive");
  }
  const double fs = signal.sample_rate;
  const auto n_in = static_cast<std::ptrdiff_t>(signal.size());
  const auto at = [&](std::ptrdiff_t k) {
    return (k < 0 || k >= n_in) ? 0.0 : signal.samples[static_cast<std::size_t>(k)];
  };

  TimeSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.resize(signal.size());
  bool any_input = false;
  for (std::size_t n = 0; n < signal.size(); ++n) {
    const double t = static_cast<double>(n) / fs;
    const double d = delay(t);
    if (!std::isfinite(d)) throw std::invalid_argument("delay must be finite");
    double pos = static_cast<double>(n) - d * fs;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < kIntegerSnap) pos = nearest;
    if (pos <= -2.0 || pos >= static_cast<double>(n_in) + 1.0) {
      out.samples[n] = 0.0;
      continue;
    }
    any_input = true;
    const double base = std::floor(pos);
    const double f = pos - base;
    const auto k = static_cast<std::ptrdiff_t>(base);
    if (f == 0.0) {
      out.samples[n] = at(k);
      continue;
    }
    // Cubic Lagrange through k-1, k, k+1, k+2.
    const double wm1 = -f * (f - 1.0) * (f - 2.0) / 6.0;
    const double w0 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    const double w1 = -(f + 1.0) * f * (f - 2.0) / 2.0;
    const double w2 = (f + 1.0) * f * (f - 1.0) / 6.0;
    out.samples[n] = wm1 * at(k - 1) + w0 * at(k) + w1 * at(k + 1) + w2 * at(k + 2);
  }
  if (!any_input && !signal.empty()) {
    std::clog << "warning: delay exceeds the signal duration everywhere; "
                 "output is silent\n";
  }
  return out;
}

SimulatedTriple synthesize_triple(const TimeSignal& source,
                                  const MotionScenario& scenario) {
  validate(scenario);
  if (source.empty()) throw std::invalid_argument("source signal is empty");
  if (source.sample_rate <= 0) {
    throw std::invalid_argument("source sample rate must be positive");
  }

  const auto sigma1 = [&](double t) { return direct_delay(scenario, t); };
  const auto sigma2 = [&](double t) { return reflected_delay(scenario, t); };

  SimulatedTriple triple;
  triple.scenario = scenario;
  triple.reference = source;
  triple.direct = apply_time_varying_delay(source, sigma1);
  triple.combined = triple.direct;
  const bool reflect = scenario.reflection_coefficient != 0.0;
  TimeSignal reflected;
  if (reflect) reflected = apply_time_varying_delay(source, sigma2);

  const double fs = source.sample_rate;
  for (std::size_t n = 0; n < source.size(); ++n) {
    const double t = static_cast<double>(n) / fs;
    const double r1 = scenario.c * sigma1(t);
    const double r2 = scenario.c * sigma2(t);
    triple.reference.samples[n] = source.samples[n] / r1;
    triple.direct.samples[n] /= r1;
    triple.combined.samples[n] = triple.direct.samples[n];
    if (reflect) {
      triple.combined.samples[n] +=
          scenario.reflection_coefficient * reflected.samples[n] / r2;
    }
  }
  return triple;
}

std::vector<double> default_velocities() {
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) v.push_back(10.0 * i);
  return v;
}

std::vector<SimulatedTriple> velocity_sweep(
    const TimeSignal& source, const MotionScenario& base,
    std::span<const double> velocities) {
  if (velocities.empty()) throw std::invalid_argument("velocity list is empty");
  std::vector<SimulatedTriple> out;
  out.reserve(velocities.size());
  for (double v : velocities) {
    MotionScenario s = base;
    s.v_s = v;
    out.push_back(synthesize_triple(source, s));
  }
  return out;
}

}  // namespace cepfilt
