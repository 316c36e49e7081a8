// Copyright 2026 The hyperseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <fstream>

#include <png.h>

#include "hyperseg/error.hpp"

namespace hyperseg::app {

std::array<std::uint8_t, 3> label_color(std::int32_t label, std::int32_t label_count) {
  if (label <= 0 || label_count <= 0) return {0, 0, 0};
  const double hue = static_cast<double>(label) / static_cast<double>(label_count);
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  double r = 0.0, g = 0.0, b = 0.0;
  switch (sector) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = 1 - f; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = 1 - f; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = 1 - f; break;
  }
  auto to8 = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return {to8(r), to8(g), to8(b)};
}

std::vector<std::uint8_t> colorize(const LabelMap& labels) {
  const std::int32_t count = labels.max_label();
  std::vector<std::uint8_t> rgb(labels.size() * 3);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const auto c = label_color(labels[p], count);
    std::copy(c.begin(), c.end(), rgb.begin() + static_cast<std::ptrdiff_t>(3 * p));
  }
  return rgb;
}

std::vector<std::uint8_t> boundary_overlay(const HyperCube& cube, const LabelMap& labels) {
  if (cube.height() != labels.height() || cube.width() != labels.width())
    throw ShapeError("boundary_overlay: label map does not match the cube");
  const std::size_t h = cube.height();
  const std::size_t w = cube.width();
  std::vector<double> grey(h * w);
  for (std::size_t p = 0; p < h * w; ++p) {
    const auto s = cube.spectrum(p);
    double sum = 0.0;
    for (float v : s) sum += v;
    grey[p] = sum / static_cast<double>(s.size());
  }
  const double hi = std::max(*std::max_element(grey.begin(), grey.end()), 1e-12);
  std::vector<std::uint8_t> rgb(h * w * 3);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t p = r * w + c;
      const auto l = labels[p];
      const bool edge = (c + 1 < w && labels[p + 1] != l) || (r + 1 < h && labels[p + w] != l);
      if (edge) {
        rgb[3 * p] = 255;
        rgb[3 * p + 1] = 0;
        rgb[3 * p + 2] = 0;
      } else {
        const auto v = static_cast<std::uint8_t>(std::lround(std::clamp(grey[p] / hi, 0.0, 1.0) * 255.0));
        rgb[3 * p] = rgb[3 * p + 1] = rgb[3 * p + 2] = v;
      }
    }
  }
  return rgb;
}

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void no_flush(png_structp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(std::size_t height, std::size_t width,
                                     const std::vector<std::uint8_t>& rgb) {
  if (rgb.size() != height * width * 3) throw ShapeError("encode_png: buffer size mismatch");
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed");
  }
  png_set_write_fn(png, &out, append_bytes, no_flush);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 9);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_write_info(png, info);
  for (std::size_t r = 0; r < height; ++r)
    png_write_row(png, const_cast<png_bytep>(rgb.data() + r * width * 3));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const std::filesystem::path& path, std::size_t height, std::size_t width,
               const std::vector<std::uint8_t>& rgb) {
  const auto bytes = encode_png(height, width, rgb);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace hyperseg::app
