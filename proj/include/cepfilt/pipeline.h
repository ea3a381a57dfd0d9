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

#ifndef CEPFILT_PIPELINE_H_
#define CEPFILT_PIPELINE_H_

#include <optional>
#include <vector>

#include "cepfilt/adaptive_filter.h"
#include "cepfilt/cepstral.h"
#include "cepfilt/motion_sim.h"
#include "cepfilt/spectral.h"

namespace cepfilt {

struct PipelineConfig {
  StftParams stft;
  double log_floor = kDefaultLogFloor;
  // Explicit band. When unset, tau_max comes from `scenario`.
  std::optional<QuefrencyBand> band;
  // Overrides the two-bin default lower edge when the band is derived.
  std::optional<double> tau_min;
  std::optional<MotionScenario> scenario;
  AdaptiveBandStopConfig filter;
  bool reconstruct_audio = true;
};

// Band used for `ceps`: the explicit band, else one derived from the
// scenario. Throws std::invalid_argument when neither is configured.
QuefrencyBand resolve_band(const PipelineConfig& cfg, const Cepstrogram& ceps);

// Cepstrogram -> temporal band-stop on the selected quefrencies -> inverse.
// The input phase, when present, is carried over to the result unchanged.
Spectrogram filter_spectrogram(const Spectrogram& spec,
                               const PipelineConfig& cfg,
                               std::vector<CornerSample>* trajectory =
                                   nullptr);

struct FilteredAudio {
  TimeSignal audio;  // empty when cfg.reconstruct_audio is false
  Spectrogram before;
  Spectrogram after;
};

FilteredAudio filter_audio(const TimeSignal& signal, const PipelineConfig& cfg,
                           std::vector<CornerSample>* trajectory = nullptr);

}  // namespace cepfilt

#endif  // CEPFILT_PIPELINE_H_
