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

#ifndef CEPFILT_SRC_FFT_H_
#define CEPFILT_SRC_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace cepfilt::internal {

// Thin RAII wrappers over FFTW plans with owned, aligned buffers. Plan
// creation and destruction are serialised internally; execution on distinct
// objects is safe from multiple threads.

// Real-to-half-complex forward DFT of length n (n/2 + 1 outputs) and its
// unnormalised inverse.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::span<double> real() { return {real_, n_}; }
  std::span<std::complex<double>> spectrum() { return {spectrum_, n_ / 2 + 1}; }

  void forward();   // real() -> spectrum()
  void backward();  // spectrum() -> real(), scaled by n

 private:
  std::size_t n_;
  double* real_;
  std::complex<double>* spectrum_;
  void* forward_plan_;
  void* backward_plan_;
};

// DCT-I of length n (FFTW REDFT00):
//   Y[k] = X[0] + (-1)^k X[n-1] + 2 * sum_{j=1}^{n-2} X[j] cos(pi j k/(n-1)).
// This is the DFT of the even extension of length 2(n-1), so applying it
// twice scales by 2(n-1).
class EvenDft {
 public:
  explicit EvenDft(std::size_t n);
  ~EvenDft();
  EvenDft(const EvenDft&) = delete;
  EvenDft& operator=(const EvenDft&) = delete;

  std::size_t size() const { return n_; }
  std::span<double> input() { return {in_, n_}; }
  std::span<const double> output() const { return {out_, n_}; }
  void execute();

 private:
  std::size_t n_;
  double* in_;
  double* out_;
  void* plan_;
};

}  // namespace cepfilt::internal

#endif  // CEPFILT_SRC_FFT_H_
