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

#ifndef CEPFILT_ADAPTIVE_FILTER_H_
#define CEPFILT_ADAPTIVE_FILTER_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "cepfilt/cepstral.h"

namespace cepfilt {

// Single-pole IIR low-pass section
//   y[t] = a*x[t] + (1 - a)*y[t-1],  a = 2*pi*corner_hz / rate_hz.
// The coefficient must lie in (0, 1].
struct LowPassState {
  double corner_hz = 0.0;
  double rate_hz = 0.0;
  double previous_output = 0.0;

  double coefficient() const;
};

// Throws std::invalid_argument when the coefficient falls outside (0, 1].
void check_stable(double corner_hz, double rate_hz);

double lpf_step(LowPassState& state, double x);

// x - lpf_step(x); advances the same low-pass state.
double hpf_step(LowPassState& state, double x);

// x + LPF1(x) - LPF2(x), with corner1 <= corner2. Both states advance.
double bsf_step(LowPassState& low, LowPassState& high, double x);

// Closed-form transfer functions of the sections above at normalised
// frequency `freq_hz / rate_hz`.
std::complex<double> lpf_response(double corner_hz, double rate_hz,
                                  double freq_hz);
std::complex<double> bsf_response(double corner1_hz, double corner2_hz,
                                  double rate_hz, double freq_hz);

// Naka-Rushton saturation y / (y + i_mid). `y` must be non-negative.
double adaptation_state(double y, double i_mid);

struct AdaptiveBandStopConfig {
  double f_min1 = 0.05;
  double f_max1 = 0.5;
  double f_min2 = 2.0;
  double f_max2 = 15.0;
  // Adaptation midpoint. Unset means the median |value| of the in-band
  // region of the cepstrogram being filtered.
  std::optional<double> i_mid;
  double f_pre = 1.0;
};

// Checks range ordering, f_max1 < f_min2 and, when rate_hz > 0, that every
// corner is stable at that rate.
void validate(const AdaptiveBandStopConfig& config, double rate_hz = 0.0);

struct CornerPair {
  double f_m1 = 0.0;
  double f_m2 = 0.0;
};

// Linear corner laws: the stop band widens from (f_max1, f_min2) at
// i_nr = 0 to (f_min1, f_max2) at i_nr = 1.
CornerPair adaptive_corners(double i_nr, const AdaptiveBandStopConfig& config);

// Filter chain for one quefrency track.
class AdaptiveBandStop {
 public:
  // `i_mid` must be positive; config.i_mid is ignored here.
  AdaptiveBandStop(const AdaptiveBandStopConfig& config, double i_mid,
                   double rate_hz);

  // Seeds every low-pass state from the first sample of the track.
  void reset(double first_sample);

  double step(double x);

  const CornerPair& corners() const { return corners_; }
  double smoothed_intensity() const { return pre_.previous_output; }
  double intensity() const { return i_nr_; }

 private:
  AdaptiveBandStopConfig config_;
  double i_mid_;
  LowPassState pre_;
  LowPassState low_;
  LowPassState high_;
  CornerPair corners_;
  double i_nr_ = 0.0;
};

double adaptive_bsf_step(AdaptiveBandStop& state, double x);

// One row of the optional corner-trajectory dump.
struct CornerSample {
  std::size_t frame = 0;
  std::size_t bin = 0;
  double f_m1 = 0.0;
  double f_m2 = 0.0;
};

// Median of |values| over the band's bins and all frames; 0 for an empty band.
double median_abs_in_band(const Cepstrogram& ceps, const BinRange& bins);

// Runs an independent adaptive band-stop chain along time for every bin in
// `band`; bins outside are copied untouched. When `trajectory` is non-null
// the per-step corners are appended in (bin, frame) order.
Cepstrogram filter_quefrency_band(const Cepstrogram& ceps,
                                  const QuefrencyBand& band,
                                  const AdaptiveBandStopConfig& config,
                                  std::vector<CornerSample>* trajectory =
                                      nullptr);

}  // namespace cepfilt

#endif  // CEPFILT_ADAPTIVE_FILTER_H_
