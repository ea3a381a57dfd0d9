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

#ifndef CEPFILT_MOTION_SIM_H_
#define CEPFILT_MOTION_SIM_H_

#include <functional>
#include <span>
#include <vector>

#include "cepfilt/signal_io.h"

namespace cepfilt {

// Source in uniform linear motion above a reflecting boundary, observed by a
// fixed receiver. Horizontal range at time t is r0 + v_s * t.
struct MotionScenario {
  double r0 = 0.0;       // m
  double v_s = 0.0;      // m/s
  double z_s = 100.0;    // m
  double z_r = 0.5;      // m
  double c = 343.0;      // m/s
  double reflection_coefficient = -1.0;
};

void validate(const MotionScenario& scenario);

// Travel time of the direct path at time t (seconds).
double direct_delay(const MotionScenario& scenario, double t);

// Travel time of the boundary-reflected path at time t (seconds).
double reflected_delay(const MotionScenario& scenario, double t);

// out[n] = x(n/fs - delay(n/fs)) with 4-point cubic Lagrange interpolation.
// Input before t = 0 (and past the end) reads as zero.
TimeSignal apply_time_varying_delay(
    const TimeSignal& signal, const std::function<double(double)>& delay);

// Reference R (1/R1 gain only), direct A and direct-plus-reflected B.
struct SimulatedTriple {
  TimeSignal reference;
  TimeSignal direct;
  TimeSignal combined;
  MotionScenario scenario;
};

SimulatedTriple synthesize_triple(const TimeSignal& source,
                                  const MotionScenario& scenario);

std::vector<double> default_velocities();

// One triple per velocity, each with base.v_s replaced.
std::vector<SimulatedTriple> velocity_sweep(
    const TimeSignal& source, const MotionScenario& base,
    std::span<const double> velocities);

}  // namespace cepfilt

#endif  // CEPFILT_MOTION_SIM_H_
