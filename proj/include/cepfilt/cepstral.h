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

#ifndef CEPFILT_CEPSTRAL_H_
#define CEPFILT_CEPSTRAL_H_

#include <cstddef>

#include "cepfilt/grid.h"
#include "cepfilt/spectral.h"

namespace cepfilt {

struct MotionScenario;

inline constexpr double kDefaultLogFloor = 1e-10;

// Per-frame real cepstra, indexed [quefrency_bin][frame]. Bin q corresponds
// to a delay of q * quefrency_step seconds.
struct Cepstrogram {
  Grid values;
  double quefrency_step = 0.0;  // seconds per bin
  double frame_rate = 0.0;      // frames per second

  std::size_t num_quefrency_bins() const { return values.rows(); }
  std::size_t num_frames() const { return values.cols(); }
  double max_quefrency() const {
    return values.rows() == 0 ? 0.0 : (values.rows() - 1) * quefrency_step;
  }
};

// Closed quefrency interval (seconds) selected for temporal filtering. A bin
// belongs to the band when its centre quefrency lies inside the interval.
struct QuefrencyBand {
  double tau_min = 0.0;
  double tau_max = 0.0;
};

// Half-open range [first, last) of quefrency bins covered by a band.
struct BinRange {
  std::size_t first = 0;
  std::size_t last = 0;
  bool empty() const { return first >= last; }
  std::size_t size() const { return empty() ? 0 : last - first; }
};

// Throws std::invalid_argument unless 0 < tau_min <= tau_max <= the maximum
// quefrency of `ceps`.
void validate_band(const QuefrencyBand& band, const Cepstrogram& ceps);

BinRange band_bins(const QuefrencyBand& band, const Cepstrogram& ceps);

// log(max(|X|, log_floor)) followed by the inverse real DFT of the even
// extension, frame by frame. F frequency bins give F quefrency bins.
Cepstrogram cepstrogram_forward(const Spectrogram& spec,
                                double log_floor = kDefaultLogFloor);

// Forward real DFT along quefrency then exp(). The result carries no phase;
// window/hop/sample-rate metadata are recovered from the cepstrogram axes.
Spectrogram cepstrogram_inverse(const Cepstrogram& ceps);

// tau_max from the two-path delay difference at closest approach,
// 2*min(z_s, z_r)/c, and tau_min of two quefrency bins. Both are clamped to
// the representable range.
QuefrencyBand default_band(const MotionScenario& scenario,
                           const Cepstrogram& ceps);

}  // namespace cepfilt

#endif  // CEPFILT_CEPSTRAL_H_
