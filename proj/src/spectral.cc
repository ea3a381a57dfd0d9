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

#include "cepfilt/spectral.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.h"

namespace cepfilt {

std::size_t frame_count(std::size_t signal_length, std::size_t window_size,
                        std::size_t hop_size) {
  if (hop_size == 0 || signal_length < window_size) return 0;
  return (signal_length - window_size) / hop_size + 1;
}

std::vector<double> hann_window(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                static_cast<double>(length));
  }
  return w;
}

Spectrogram stft(const TimeSignal& signal, const StftParams& params) {
  const std::size_t window = params.window_size;
  const std::size_t hop = params.hop_size;
  if (hop == 0 || window < hop) {
    throw std::invalid_argument("STFT requires window_size >= hop_size > 0");
  }
  if (window % 2 != 0) throw std::invalid_argument("window_size must be even");
  if (signal.sample_rate <= 0) {
    throw std::invalid_argument("signal sample rate must be positive");
  }
  if (signal.size() < window) {
    throw std::invalid_argument("signal (" + std::to_string(signal.size()) +
                                " samples) is shorter than one window (" +
                                std::to_string(window) + ")");
  }

  const std::size_t bins = window / 2 + 1;
  const std::size_t frames = frame_count(signal.size(), window, hop);
  Spectrogram spec;
  spec.magnitude = Grid(bins, frames);
  spec.phase = Grid(bins, frames);
  spec.window_size = window;
  spec.hop_size = hop;
  spec.sample_rate = signal.sample_rate;

  const std::vector<double> w = hann_window(window);
  internal::RealFft fft(window);
  for (std::size_t t = 0; t < frames; ++t) {
    const double* frame = signal.samples.data() + t * hop;
    auto in = fft.real();
    for (std::size_t n = 0; n < window; ++n) in[n] = frame[n] * w[n];
    fft.forward();
    const auto out = fft.spectrum();
    for (std::size_t k = 0; k < bins; ++k) {
      spec.magnitude(k, t) = std::abs(out[k]);
      (*spec.phase)(k, t) = std::arg(out[k]);
    }
  }
  return spec;
}

TimeSignal istft(const Spectrogram& spec) {
  if (!spec.phase) throw std::invalid_argument("istft requires phase");
  if (!spec.phase->same_shape(spec.magnitude)) {
    throw std::invalid_argument("phase and magnitude shapes differ");
  }
  const std::size_t window = spec.window_size;
  const std::size_t hop = spec.hop_size;
  if (window == 0 || hop == 0 || window % hop != 0 ||
      spec.num_bins() != window / 2 + 1) {
    throw std::invalid_argument("inconsistent STFT geometry");
  }
  const std::vector<double> w = hann_window(window);
  // Weighted overlap-add needs sum_t w^2(n - t*hop) to be constant.
  {
    std::vector<double> acc(hop, 0.0);
    for (std::size_t n = 0; n < window; ++n) acc[n % hop] += w[n] * w[n];
    const auto [lo, hi] = std::minmax_element(acc.begin(), acc.end());
    if (*hi - *lo > 1e-9 * *hi) {
      throw std::invalid_argument("hop " + std::to_string(hop) +
                                  " is not overlap-add compliant for window " +
                                  std::to_string(window));
    }
  }

  const std::size_t frames = spec.num_frames();
  const std::size_t bins = spec.num_bins();
  TimeSignal out;
  out.sample_rate = spec.sample_rate;
  const std::size_t length = frames == 0 ? 0 : (frames - 1) * hop + window;
  out.samples.assign(length, 0.0);
  std::vector<double> norm(length, 0.0);

  internal::RealFft fft(window);
  const double scale = 1.0 / static_cast<double>(window);
  for (std::size_t t = 0; t < frames; ++t) {
    auto freq = fft.spectrum();
    for (std::size_t k = 0; k < bins; ++k) {
      freq[k] = std::polar(spec.magnitude(k, t), (*spec.phase)(k, t));
    }
    // The DC and Nyquist bins of a real signal's spectrum are real.
    freq[0] = freq[0].real();
    freq[bins - 1] = freq[bins - 1].real();
    fft.backward();
    const auto frame = fft.real();
    double* dst = out.samples.data() + t * hop;
    double* nrm = norm.data() + t * hop;
    for (std::size_t n = 0; n < window; ++n) {
      dst[n] += frame[n] * scale * w[n];
      nrm[n] += w[n] * w[n];
    }
  }
  for (std::size_t n = 0; n < length; ++n) {
    if (norm[n] > 1e-8) out.samples[n] /= norm[n];
    else out.samples[n] = 0.0;
  }
  return out;
}

}  // namespace cepfilt
