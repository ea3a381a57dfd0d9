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

#include "cepfilt/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cepfilt {
namespace {

void check_shapes(const Grid& reference, const Grid& test) {
  if (!reference.same_shape(test)) {
    throw std::invalid_argument("metric inputs must have identical shapes");
  }
  if (reference.empty()) throw std::invalid_argument("metric inputs are empty");
}

}  // namespace

double snr(const Grid& reference, const Grid& test) {
  check_shapes(reference, test);
  const auto r = reference.values();
  const auto n = test.values();
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    signal += r[i] * r[i];
    const double d = n[i] - r[i];
    noise += d * d;
  }
  if (signal == 0.0) {
    throw std::invalid_argument("SNR undefined for an all-zero reference");
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

double lsd(const Grid& reference, const Grid& test, double floor,
           LsdNormalization normalization) {
  check_shapes(reference, test);
  const auto r = reference.values();
  const auto n = test.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d =
        std::log(std::max(n[i], floor)) - std::log(std::max(r[i], floor));
    sum += d * d;
  }
  const auto cells = static_cast<double>(r.size());
  if (normalization == LsdNormalization::kPerCellRms) {
    return std::sqrt(sum / cells);
  }
  return std::sqrt(sum) / cells;
}

double itakura_saito(const Grid& reference, const Grid& test, double floor) {
  check_shapes(reference, test);
  const auto r = reference.values();
  const auto n = test.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double rv = std::max(r[i], floor);
    const double nv = std::max(n[i], floor);
    const double ratio = (rv * rv) / (nv * nv);
    sum += std::max(0.0, ratio - std::log(ratio) - 1.0);
  }
  return sum;
}

MetricReport evaluate(const Grid& reference, const Grid& test, double floor,
                      LsdNormalization normalization) {
  MetricReport report;
  report.snr_db = snr(reference, test);
  report.lsd = lsd(reference, test, floor, normalization);
  report.is_distance = itakura_saito(reference, test, floor);
  report.num_bins = reference.rows();
  report.num_frames = reference.cols();
  return report;
}

}  // namespace cepfilt
