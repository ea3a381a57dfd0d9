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

#include "cepfilt/cepstral.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cepfilt/motion_sim.h"
#include "fft.h"

namespace cepfilt {
namespace {

// Tolerance for deciding whether a bin centre sits on a band edge.
constexpr double kEdgeTolerance = 1e-9;

}  // namespace

void validate_band(const QuefrencyBand& band, const Cepstrogram& ceps) {
  if (!(band.tau_min > 0.0)) {
    throw std::invalid_argument("tau_min must be positive");
  }
  if (!(band.tau_min <= band.tau_max)) {
    throw std::invalid_argument("tau_min must not exceed tau_max");
  }
  const double limit = ceps.max_quefrency() * (1.0 + kEdgeTolerance);
  if (band.tau_max > limit) {
    throw std::invalid_argument(
        "tau_max " + std::to_string(band.tau_max) +
        " s exceeds the maximum representable quefrency " +
        std::to_string(ceps.max_quefrency()) + " s");
  }
}

BinRange band_bins(const QuefrencyBand& band, const Cepstrogram& ceps) {
  validate_band(band, ceps);
  const double lo = band.tau_min / ceps.quefrency_step;
  const double hi = band.tau_max / ceps.quefrency_step;
  const auto first = static_cast<std::size_t>(std::ceil(lo - kEdgeTolerance));
  const auto last_inclusive =
      static_cast<std::size_t>(std::floor(hi + kEdgeTolerance));
  BinRange range;
  range.first = first;
  range.last = std::min(last_inclusive + 1, ceps.num_quefrency_bins());
  if (range.last < range.first) range.last = range.first;
  return range;
}

Cepstrogram cepstrogram_forward(const Spectrogram& spec, double log_floor) {
  if (!(log_floor > 0.0)) throw std::invalid_argument("log_floor must be > 0");
  const std::size_t bins = spec.num_bins();
  const std::size_t frames = spec.num_frames();
  if (bins < 2 || frames == 0) {
    throw std::invalid_argument("cepstrogram requires a non-empty spectrogram");
  }
  if (spec.sample_rate <= 0 || spec.hop_size == 0) {
    throw std::invalid_argument("spectrogram metadata is incomplete");
  }

  Cepstrogram ceps;
  ceps.values = Grid(bins, frames);
  ceps.quefrency_step = 1.0 / static_cast<double>(spec.sample_rate);
  ceps.frame_rate = spec.frame_rate();

  internal::EvenDft dct(bins);
  const double scale = 1.0 / (2.0 * static_cast<double>(bins - 1));
  for (std::size_t t = 0; t < frames; ++t) {
    auto in = dct.input();
    for (std::size_t k = 0; k < bins; ++k) {
      const double m = spec.magnitude(k, t);
      if (m < 0.0 || std::isnan(m)) {
        throw std::invalid_argument("spectrogram magnitudes must be >= 0");
      }
      in[k] = std::log(std::max(m, log_floor));
    }
    dct.execute();
    const auto out = dct.output();
    for (std::size_t q = 0; q < bins; ++q) ceps.values(q, t) = out[q] * scale;
  }
  return ceps;
}

Spectrogram cepstrogram_inverse(const Cepstrogram& ceps) {
  const std::size_t bins = ceps.num_quefrency_bins();
  const std::size_t frames = ceps.num_frames();
  if (bins < 2 || frames == 0) {
    throw std::invalid_argument("cepstrogram is empty");
  }
  for (double v : ceps.values.values()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("cepstrogram contains non-finite values");
    }
  }

  Spectrogram spec;
  spec.magnitude = Grid(bins, frames);
  spec.window_size = 2 * (bins - 1);
  if (ceps.quefrency_step > 0.0) {
    spec.sample_rate = static_cast<int>(std::lround(1.0 / ceps.quefrency_step));
    if (ceps.frame_rate > 0.0) {
      spec.hop_size = static_cast<std::size_t>(
          std::lround(static_cast<double>(spec.sample_rate) / ceps.frame_rate));
    }
  }

  internal::EvenDft dct(bins);
  for (std::size_t t = 0; t < frames; ++t) {
    auto in = dct.input();
    for (std::size_t q = 0; q < bins; ++q) in[q] = ceps.values(q, t);
    dct.execute();
    const auto out = dct.output();
    for (std::size_t k = 0; k < bins; ++k) spec.magnitude(k, t) = std::exp(out[k]);
  }
  return spec;
}

QuefrencyBand default_band(const MotionScenario& scenario,
                           const Cepstrogram& ceps) {
  if (!(scenario.z_s > 0.0) || !(scenario.z_r > 0.0) || !(scenario.c > 0.0)) {
    throw std::invalid_argument("z_s, z_r and c must be positive");
  }
  if (ceps.num_quefrency_bins() < 2 || !(ceps.quefrency_step > 0.0)) {
    throw std::invalid_argument("cepstrogram is empty");
  }
  const double range_max = ceps.max_quefrency();
  const double step = ceps.quefrency_step;
  const double tau_max =
      std::min(2.0 * std::min(scenario.z_s, scenario.z_r) / scenario.c, range_max);
  const double tau_min = std::min(2.0 * step, tau_max);
  return {tau_min, tau_max};
}

}  // namespace cepfilt
