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

#include "cepfilt/signal_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace cepfilt {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct WavFormat {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

TimeSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open WAV file: " + path.string());
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
  const auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error(path.string() + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }

  std::optional<WavFormat> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t chunk_size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16 || available < 16) throw fail("truncated fmt chunk");
      WavFormat f;
      f.format = read_u16(chunk + 8);
      f.channels = read_u16(chunk + 10);
      f.sample_rate = read_u32(chunk + 12);
      f.bits_per_sample = read_u16(chunk + 22);
      if (f.format == kFormatExtensible) {
        if (chunk_size < 40 || available < 40) {
          throw fail("truncated extensible fmt chunk");
        }
        f.format = read_u16(chunk + 8 + 24);
      }
      fmt = f;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min<std::size_t>(chunk_size, available);
      if (fmt) break;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }

  if (!fmt) throw fail("missing fmt chunk");
  if (data == nullptr) throw fail("missing data chunk");
  if (fmt->channels == 0 || fmt->sample_rate == 0) {
    throw fail("invalid channel count or sample rate");
  }
  const bool pcm16 = fmt->format == kFormatPcm && fmt->bits_per_sample == 16;
  const bool float32 =
      fmt->format == kFormatFloat && fmt->bits_per_sample == 32;
  if (!pcm16 && !float32) {
    throw fail("unsupported encoding (need 16-bit PCM or 32-bit float)");
  }

  const std::size_t bytes_per_sample = fmt->bits_per_sample / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  const std::size_t num_frames = data_size / frame_bytes;
  if (num_frames == 0) throw fail("zero-length audio");

  TimeSignal signal;
  signal.sample_rate = static_cast<int>(fmt->sample_rate);
  signal.samples.resize(num_frames);
  for (std::size_t i = 0; i < num_frames; ++i) {
    const unsigned char* p = data + i * frame_bytes;
    if (pcm16) {
      const auto v = static_cast<std::int16_t>(read_u16(p));
      signal.samples[i] = static_cast<double>(v) / 32768.0;
    } else {
      signal.samples[i] = std::bit_cast<float>(read_u32(p));
    }
  }
  return signal;
}

void save_wav(const TimeSignal& signal, const std::filesystem::path& path) {
  if (signal.empty()) throw std::invalid_argument("cannot save an empty signal");
  if (signal.sample_rate <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(signal.size() * sizeof(float));

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * 4);
  put_u16(out, 4);
  put_u16(out, 32);
  out += "data";
  put_u32(out, data_bytes);
  for (double s : signal.samples) {
    const float v = static_cast<float>(std::clamp(s, -1.0, 1.0));
    put_u32(out, std::bit_cast<std::uint32_t>(v));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write WAV file: " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw std::runtime_error("write failed: " + path.string());
}

namespace {

constexpr int kTaps = 64;
constexpr int kPhases = 512;
constexpr double kKaiserBeta = 8.6;

// Kaiser-windowed sinc sampled on a fine grid of kPhases points per input
// sample, spanning kTaps input samples. `cutoff` is in cycles per input
// sample.
std::vector<double> build_kernel(double cutoff) {
  const int half = kTaps / 2;
  std::vector<double> table(static_cast<std::size_t>(kTaps * kPhases + 1));
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double u = static_cast<double>(i) / kPhases - half;
    const double r = u / half;
    const double window =
        std::abs(r) >= 1.0
            ? 0.0
            : std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) /
                  i0_beta;
    const double x = 2.0 * cutoff * u;
    const double sinc =
        x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    table[i] = 2.0 * cutoff * sinc * window;
  }
  return table;
}

}  // namespace

TimeSignal resample(const TimeSignal& signal, int target_rate) {
  if (target_rate <= 0) throw std::invalid_argument("target_rate must be > 0");
  if (signal.sample_rate <= 0) {
    throw std::invalid_argument("input sample rate must be positive");
  }
  if (target_rate == signal.sample_rate) return signal;

  const double ratio =
      static_cast<double>(target_rate) / static_cast<double>(signal.sample_rate);
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(signal.size()) * ratio));
  // Transition band sits just below the lower of the two Nyquist limits.
  const double cutoff = 0.5 * std::min(1.0, ratio) * 0.92;
  const std::vector<double> kernel = build_kernel(cutoff);
  const int half = kTaps / 2;
  const auto n_in = static_cast<std::ptrdiff_t>(signal.size());

  TimeSignal out;
  out.sample_rate = target_rate;
  out.samples.resize(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    const double pos = static_cast<double>(n) / ratio;
    const auto base = static_cast<std::ptrdiff_t>(std::floor(pos));
    double acc = 0.0;
    for (std::ptrdiff_t k = base - half + 1; k <= base + half; ++k) {
      if (k < 0 || k >= n_in) continue;
      const double u = pos - static_cast<double>(k) + half;
      const double fidx = u * kPhases;
      const auto idx = static_cast<std::size_t>(fidx);
      if (idx + 1 >= kernel.size()) continue;
      const double frac = fidx - static_cast<double>(idx);
      const double h = kernel[idx] + frac * (kernel[idx + 1] - kernel[idx]);
      acc += signal.samples[static_cast<std::size_t>(k)] * h;
    }
    out.samples[n] = acc;
  }
  return out;
}

TimeSignal generate_broadband(double duration, int sample_rate,
                              std::uint64_t seed) {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (sample_rate <= 0) throw std::invalid_argument("sample rate must be > 0");
  const auto n = static_cast<std::size_t>(
      std::llround(duration * static_cast<double>(sample_rate)));
  TimeSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (double& s : out.samples) s = dist(rng);
  return out;
}

}  // namespace cepfilt
