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

#include "cepfilt/export.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace cepfilt {
namespace {

std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Rows are written top-down, so grid row 0 lands on the last image row.
void write_gray_png(const std::vector<std::uint8_t>& pixels, std::size_t width,
                    std::size_t height, const std::filesystem::path& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"),
                                             &std::fclose);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed: " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(pixels.data() + y * width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::uint8_t to_byte(double unit) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
}

}  // namespace

void write_grid_csv(const Grid& grid, const std::filesystem::path& path) {
  std::ofstream out = open_text(path);
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    const auto row = grid.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_value(row[c]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_spectrogram_png(const Grid& magnitude,
                           const std::filesystem::path& path,
                           double dynamic_range_db) {
  if (magnitude.empty()) throw std::invalid_argument("empty spectrogram");
  const std::size_t width = magnitude.cols();
  const std::size_t height = magnitude.rows();
  double peak = 0.0;
  for (double m : magnitude.values()) peak = std::max(peak, m);
  const double top_db = 20.0 * std::log10(std::max(peak, 1e-300));
  std::vector<std::uint8_t> pixels(width * height);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double db = 20.0 * std::log10(std::max(magnitude(r, c), 1e-300));
      pixels[(height - 1 - r) * width + c] =
          to_byte(1.0 + (db - top_db) / dynamic_range_db);
    }
  }
  write_gray_png(pixels, width, height, path);
}

void write_cepstrogram_png(const Grid& values, const std::filesystem::path& path) {
  if (values.empty()) throw std::invalid_argument("empty cepstrogram");
  const std::size_t width = values.cols();
  const std::size_t height = values.rows();
  double scale = 0.0;
  for (std::size_t r = height > 1 ? 1 : 0; r < height; ++r) {
    for (double v : values.row(r)) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) scale = 1.0;
  std::vector<std::uint8_t> pixels(width * height);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      pixels[(height - 1 - r) * width + c] = to_byte(0.5 + 0.5 * values(r, c) / scale);
    }
  }
  write_gray_png(pixels, width, height, path);
}

void write_corner_trajectory_csv(std::span<const CornerSample> samples,
                                 const std::filesystem::path& path) {
  std::ofstream out = open_text(path);
  out << "frame,bin,f_m1,f_m2\n";
  for (const CornerSample& s : samples) {
    out << s.frame << ',' << s.bin << ',' << format_value(s.f_m1) << ','
        << format_value(s.f_m2) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace cepfilt
