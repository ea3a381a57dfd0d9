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

#ifndef CEPFILT_SPECTRAL_H_
#define CEPFILT_SPECTRAL_H_

#include <cstddef>
#include <optional>

#include "cepfilt/grid.h"
#include "cepfilt/signal_io.h"

namespace cepfilt {

struct StftParams {
  std::size_t window_size = 1024;
  std::size_t hop_size = 256;
};

// One-sided magnitude (and optionally phase) grid, indexed [bin][frame].
struct Spectrogram {
  Grid magnitude;
  std::optional<Grid> phase;
  std::size_t window_size = 0;
  std::size_t hop_size = 0;
  int sample_rate = 0;

  std::size_t num_bins() const { return magnitude.rows(); }
  std::size_t num_frames() const { return magnitude.cols(); }
  double bin_spacing() const {
    return static_cast<double>(sample_rate) / static_cast<double>(window_size);
  }
  double frame_rate() const {
    return static_cast<double>(sample_rate) / static_cast<double>(hop_size);
  }
};

// Number of full frames; trailing samples shorter than a window are dropped.
std::size_t frame_count(std::size_t signal_length, std::size_t window_size,
                        std::size_t hop_size);

// Periodic Hann window of the given length.
std::vector<double> hann_window(std::size_t length);

// Hann-windowed one-sided STFT. Frame t covers [t*hop, t*hop + window).
Spectrogram stft(const TimeSignal& signal, const StftParams& params = {});

// Weighted overlap-add inverse of stft(). Requires phase and a hop for which
// the squared Hann window overlap-adds to a constant.
TimeSignal istft(const Spectrogram& spec);

}  // namespace cepfilt

#endif  // CEPFILT_SPECTRAL_H_
