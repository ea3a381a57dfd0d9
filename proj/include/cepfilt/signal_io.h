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

#ifndef CEPFILT_SIGNAL_IO_H_
#define CEPFILT_SIGNAL_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cepfilt {

// Uniformly sampled mono audio. Amplitudes are nominally in [-1, 1].
struct TimeSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Reads a PCM16 or float32 WAV. Multi-channel files keep channel 0 only.
// Throws std::runtime_error on missing files, unsupported encodings and
// zero-length audio.
TimeSignal load_wav(const std::filesystem::path& path);

// Writes a 32-bit float mono WAV. Samples are clipped to [-1, 1] first.
void save_wav(const TimeSignal& signal, const std::filesystem::path& path);

// Band-limited resampling with a Kaiser-windowed sinc kernel (64 taps).
// Output length is round(input_length * target_rate / input_rate).
TimeSignal resample(const TimeSignal& signal, int target_rate);

// Seeded Gaussian white noise with unit variance.
TimeSignal generate_broadband(double duration, int sample_rate,
                              std::uint64_t seed);

}  // namespace cepfilt

#endif  // CEPFILT_SIGNAL_IO_H_
