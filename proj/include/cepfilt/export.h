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

#ifndef CEPFILT_EXPORT_H_
#define CEPFILT_EXPORT_H_

#include <filesystem>
#include <span>

#include "cepfilt/adaptive_filter.h"
#include "cepfilt/grid.h"

namespace cepfilt {

// One CSV row per grid row (bins ascending), one column per frame.
void write_grid_csv(const Grid& grid, const std::filesystem::path& path);

// 8-bit grayscale, low bins at the bottom. Magnitudes are mapped through
// 20*log10 over `dynamic_range_db` below the peak.
void write_spectrogram_png(const Grid& magnitude,
                           const std::filesystem::path& path,
                           double dynamic_range_db = 80.0);

// Signed values mapped linearly around mid-gray; quefrency bin 0 is skipped
// when scaling because it dwarfs the rest.
void write_cepstrogram_png(const Grid& values, const std::filesystem::path& path);

// frame,bin,f_m1,f_m2
void write_corner_trajectory_csv(std::span<const CornerSample> samples,
                                 const std::filesystem::path& path);

}  // namespace cepfilt

#endif  // CEPFILT_EXPORT_H_
