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

#include "cepfilt/pipeline.h"

#include <stdexcept>

namespace cepfilt {

QuefrencyBand resolve_band(const PipelineConfig& cfg, const Cepstrogram& ceps) {
  if (cfg.band) return *cfg.band;
  if (!cfg.scenario) {
    throw std::invalid_argument(
        "no quefrency band: set tau_min/tau_max or provide a motion scenario");
  }
  QuefrencyBand band = default_band(*cfg.scenario, ceps);
  if (cfg.tau_min) band.tau_min = *cfg.tau_min;
  return band;
}

Spectrogram filter_spectrogram(const Spectrogram& spec,
                               const PipelineConfig& cfg,
                               std::vector<CornerSample>* trajectory) {
  const Cepstrogram ceps = cepstrogram_forward(spec, cfg.log_floor);
  const QuefrencyBand band = resolve_band(cfg, ceps);
  const Cepstrogram filtered =
      filter_quefrency_band(ceps, band, cfg.filter, trajectory);
  Spectrogram out = cepstrogram_inverse(filtered);

  // Cells that come back at (or below) the floor were floored on the way
  // in; restore them to exact zeros so silence stays silent.
  const double snap = cfg.log_floor * (1.0 + 1e-6);
  for (double& m : out.magnitude.values()) {
    if (m <= snap) m = 0.0;
  }
  out.phase = spec.phase;
  out.window_size = spec.window_size;
  out.hop_size = spec.hop_size;
  out.sample_rate = spec.sample_rate;
  return out;
}

FilteredAudio filter_audio(const TimeSignal& signal, const PipelineConfig& cfg,
                           std::vector<CornerSample>* trajectory) {
  FilteredAudio result;
  result.before = stft(signal, cfg.stft);
  result.after = filter_spectrogram(result.before, cfg, trajectory);
  if (cfg.reconstruct_audio) {
    result.audio = istft(result.after);
    // Overlap-add covers only whole frames; pad the tail back to the input
    // length.
    result.audio.samples.resize(signal.size(), 0.0);
  }
  return result;
}

}  // namespace cepfilt
