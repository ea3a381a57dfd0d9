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

#include "fft.h"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace cepfilt::internal {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("FFT length must be >= 2");
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(n);
  spectrum_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n / 2 + 1));
  auto* c = reinterpret_cast<fftw_complex*>(spectrum_);
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, c, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real_,
                                        FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(real_);
  fftw_free(spectrum_);
}

void RealFft::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void RealFft::backward() {
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
}

EvenDft::EvenDft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("DCT-I length must be >= 2");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_real(n);
  out_ = fftw_alloc_real(n);
  plan_ = fftw_plan_r2r_1d(static_cast<int>(n), in_, out_, FFTW_REDFT00,
                           FFTW_ESTIMATE);
}

EvenDft::~EvenDft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void EvenDft::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

}  // namespace cepfilt::internal
