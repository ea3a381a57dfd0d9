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

#include "cepfilt/adaptive_filter.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cepfilt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double LowPassState::coefficient() const { return kTwoPi * corner_hz / rate_hz; }

void check_stable(double corner_hz, double rate_hz) {
  const double a = kTwoPi * corner_hz / rate_hz;
  if (!(rate_hz > 0.0) || !(a > 0.0) || !(a <= 1.0)) {
    throw std::invalid_argument(
        "corner frequency " + std::to_string(corner_hz) +
        " Hz is unstable at rate " + std::to_string(rate_hz) +
        " Hz (2*pi*fc/fr must lie in (0, 1])");
  }
}

double lpf_step(LowPassState& state, double x) {
  const double a = state.coefficient();
  if (!(a > 0.0) || !(a <= 1.0)) check_stable(state.corner_hz, state.rate_hz);
  const double y = a * x + (1.0 - a) * state.previous_output;
  state.previous_output = y;
  return y;
}

double hpf_step(LowPassState& state, double x) { return x - lpf_step(state, x); }

double bsf_step(LowPassState& low, LowPassState& high, double x) {
  if (low.corner_hz > high.corner_hz) {
    throw std::invalid_argument("band-stop requires corner1 <= corner2");
  }
  const double y1 = lpf_step(low, x);
  const double y2 = lpf_step(high, x);
  return x + y1 - y2;
}

std::complex<double> lpf_response(double corner_hz, double rate_hz,
                                  double freq_hz) {
  const double a = kTwoPi * corner_hz / rate_hz;
  const std::complex<double> z_inv = std::polar(1.0, -kTwoPi * freq_hz / rate_hz);
  return a / (1.0 - (1.0 - a) * z_inv);
}

std::complex<double> bsf_response(double corner1_hz, double corner2_hz,
                                  double rate_hz, double freq_hz) {
  return 1.0 + lpf_response(corner1_hz, rate_hz, freq_hz) -
         lpf_response(corner2_hz, rate_hz, freq_hz);
}

double adaptation_state(double y, double i_mid) {
  if (!(i_mid > 0.0)) throw std::invalid_argument("i_mid must be positive");
  if (y < 0.0 || std::isnan(y)) {
    throw std::invalid_argument("adaptation input must be non-negative");
  }
  if (std::isinf(y)) return 1.0;
  return y / (y + i_mid);
}

void validate(const AdaptiveBandStopConfig& config, double rate_hz) {
  if (!(config.f_min1 > 0.0) || !(config.f_min1 <= config.f_max1)) {
    throw std::invalid_argument("require 0 < f_min1 <= f_max1");
  }
  if (!(config.f_min2 <= config.f_max2)) {
    throw std::invalid_argument("require f_min2 <= f_max2");
  }
  if (!(config.f_max1 < config.f_min2)) {
    throw std::invalid_argument("require f_max1 < f_min2");
  }
  if (!(config.f_pre > 0.0)) throw std::invalid_argument("f_pre must be > 0");
  if (config.i_mid && !(*config.i_mid > 0.0)) {
    throw std::invalid_argument("i_mid must be positive");
  }
  if (rate_hz > 0.0) {
    for (double f : {config.f_pre, config.f_min1, config.f_max1, config.f_min2,
                     config.f_max2}) {
      check_stable(f, rate_hz);
    }
  }
}

CornerPair adaptive_corners(double i_nr, const AdaptiveBandStopConfig& config) {
  if (!(config.f_max1 < config.f_min2)) {
    throw std::invalid_argument("require f_max1 < f_min2");
  }
  if (!(i_nr >= 0.0 && i_nr <= 1.0)) {
    throw std::invalid_argument("adaptation state must lie in [0, 1]");
  }
  CornerPair c;
  c.f_m1 = config.f_max1 - (config.f_max1 - config.f_min1) * i_nr;
  c.f_m2 = (config.f_max2 - config.f_min2) * i_nr + config.f_min2;
  return c;
}

AdaptiveBandStop::AdaptiveBandStop(const AdaptiveBandStopConfig& config,
                                   double i_mid, double rate_hz)
    : config_(config), i_mid_(i_mid) {
  validate(config_, rate_hz);
  if (!(i_mid_ > 0.0)) throw std::invalid_argument("i_mid must be positive");
  pre_ = {config_.f_pre, rate_hz, 0.0};
  low_ = {config_.f_max1, rate_hz, 0.0};
  high_ = {config_.f_min2, rate_hz, 0.0};
  corners_ = {config_.f_max1, config_.f_min2};
}

void AdaptiveBandStop::reset(double first_sample) {
  pre_.previous_output = std::abs(first_sample);
  low_.previous_output = first_sample;
  high_.previous_output = first_sample;
  corners_ = {config_.f_max1, config_.f_min2};
  i_nr_ = 0.0;
}

double AdaptiveBandStop::step(double x) {
  const double envelope = lpf_step(pre_, std::abs(x));
  i_nr_ = adaptation_state(envelope, i_mid_);
  corners_ = adaptive_corners(i_nr_, config_);
  low_.corner_hz = corners_.f_m1;
  high_.corner_hz = corners_.f_m2;
  return bsf_step(low_, high_, x);
}

double adaptive_bsf_step(AdaptiveBandStop& state, double x) {
  return state.step(x);
}

double median_abs_in_band(const Cepstrogram& ceps, const BinRange& bins) {
  if (bins.empty() || ceps.num_frames() == 0) return 0.0;
  std::vector<double> mags;
  mags.reserve(bins.size() * ceps.num_frames());
  for (std::size_t q = bins.first; q < bins.last; ++q) {
    for (double v : ceps.values.row(q)) mags.push_back(std::abs(v));
  }
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  if (mags.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(mags.begin(), mid);
  return 0.5 * (lower + upper);
}

Cepstrogram filter_quefrency_band(const Cepstrogram& ceps,
                                  const QuefrencyBand& band,
                                  const AdaptiveBandStopConfig& config,
                                  std::vector<CornerSample>* trajectory) {
  const BinRange bins = band_bins(band, ceps);
  validate(config, ceps.frame_rate);

  Cepstrogram out = ceps;
  if (bins.empty() || ceps.num_frames() == 0) return out;

  double i_mid = config.i_mid.value_or(median_abs_in_band(ceps, bins));
  // A flat in-band region (e.g. silence) has median zero; any positive
  // midpoint leaves a constant track unchanged.
  if (!(i_mid > 0.0)) i_mid = 1.0;

  const std::size_t frames = ceps.num_frames();
  if (trajectory) trajectory->reserve(trajectory->size() + bins.size() * frames);
  for (std::size_t q = bins.first; q < bins.last; ++q) {
    const auto in = ceps.values.row(q);
    auto dst = out.values.row(q);
    AdaptiveBandStop chain(config, i_mid, ceps.frame_rate);
    chain.reset(in[0]);
    for (std::size_t t = 0; t < frames; ++t) {
      dst[t] = chain.step(in[t]);
      if (trajectory) {
        trajectory->push_back({t, q, chain.corners().f_m1, chain.corners().f_m2});
      }
    }
  }
  return out;
}

}  // namespace cepfilt
