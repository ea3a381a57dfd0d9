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

#ifndef CEPFILT_METRICS_H_
#define CEPFILT_METRICS_H_

#include <cstddef>

#include "cepfilt/grid.h"

namespace cepfilt {

inline constexpr double kMetricFloor = 1e-10;

enum class LsdNormalization {
  // (1/(F*T)) * sqrt(sum of squared log differences).
  kOutsideRoot,
  // sqrt(mean of squared log differences), the usual RMS form.
  kPerCellRms,
};

// 10*log10(sum R^2 / sum (N - R)^2). Returns +infinity when N == R.
double snr(const Grid& reference, const Grid& test);

double lsd(const Grid& reference, const Grid& test,
           double floor = kMetricFloor,
           LsdNormalization normalization = LsdNormalization::kOutsideRoot);

// sum over cells of R^2/N^2 - log(R^2/N^2) - 1, natural log.
double itakura_saito(const Grid& reference, const Grid& test,
                     double floor = kMetricFloor);

struct MetricReport {
  double snr_db = 0.0;
  double lsd = 0.0;
  double is_distance = 0.0;
  std::size_t num_bins = 0;
  std::size_t num_frames = 0;
};

MetricReport evaluate(const Grid& reference, const Grid& test,
                      double floor = kMetricFloor,
                      LsdNormalization normalization =
                          LsdNormalization::kOutsideRoot);

}  // namespace cepfilt

#endif  // CEPFILT_METRICS_H_
