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

#include "hyperseg/npy.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>

#include "hyperseg/error.hpp"

namespace hyperseg {
namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;

std::vector<char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  std::vector<char> buffer(size);
  in.seekg(0);
  if (size > 0 && !in.read(buffer.data(), static_cast<std::streamsize>(size)))
    throw IoError("cannot read " + path.string());
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& header,
                const char* payload, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(payload, static_cast<std::streamsize>(bytes));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Returns the raw text following `'key':` up to the next top-level comma.
std::string_view dict_value(std::string_view dict, std::string_view key) {
  std::string quoted = "'" + std::string(key) + "'";
  auto pos = dict.find(quoted);
  if (pos == std::string_view::npos) {
    quoted = "\"" + std::string(key) + "\"";
    pos = dict.find(quoted);
  }
  if (pos == std::string_view::npos) throw IoError("npy header lacks key '" + std::string(key) + "'");
  pos = dict.find(':', pos + quoted.size());
  if (pos == std::string_view::npos) throw IoError("npy header is malformed");
  std::size_t end = pos + 1;
  int depth = 0;
  for (; end < dict.size(); ++end) {
    const char c = dict[end];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' && depth == 0) || c == '}') break;
  }
  return trim(dict.substr(pos + 1, end - pos - 1));
}

std::vector<std::size_t> parse_shape(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw IoError("npy header has a malformed shape");
  text = text.substr(1, text.size() - 2);
  std::vector<std::size_t> shape;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    if (!item.empty()) {
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size())
        throw IoError("npy header has a malformed shape entry");
      shape.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return shape;
}

std::size_t element_count(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

template <typename T>
T load_scalar(const char* p, bool swap) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), p, sizeof(T));
  if (swap) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

bool needs_swap(char order) {
  constexpr bool host_little = std::endian::native == std::endian::little;
  if (order == '<') return !host_little;
  if (order == '>') return host_little;
  return false;  // '|' or '='
}

// Decodes the payload into C order as double-free typed values.
template <typename Out>
std::vector<Out> decode_payload(const std::vector<char>& buffer, const NpyHeader& header,
                                const std::string& what) {
  const std::string& d = header.descr;
  if (d.size() < 3) throw IoError(what + ": unsupported dtype '" + d + "'");
  const char order = d[0];
  const char kind = d[1];
  std::size_t itemsize = 0;
  {
    const auto [ptr, ec] = std::from_chars(d.data() + 2, d.data() + d.size(), itemsize);
    if (ec != std::errc() || ptr != d.data() + d.size())
      throw IoError(what + ": unsupported dtype '" + d + "'");
  }
  const std::size_t count = element_count(header.shape);
  const std::size_t need = header.header_bytes + count * itemsize;
  if (buffer.size() < need)
    throw IoError(what + ": truncated payload (" + std::to_string(buffer.size()) +
                  " bytes, expected " + std::to_string(need) + ")");
  if (buffer.size() > need) throw IoError(what + ": trailing bytes after payload");

  const bool swap = needs_swap(order);
  const char* base = buffer.data() + header.header_bytes;
  std::vector<Out> out(count);

  auto convert = [&]<typename T>(std::type_identity<T>) {
    for (std::size_t i = 0; i < count; ++i) {
      const T v = load_scalar<T>(base + i * sizeof(T), swap);
      if constexpr (std::is_integral_v<Out> && std::is_integral_v<T>) {
        if (std::cmp_less(v, std::numeric_limits<Out>::min()) ||
            std::cmp_greater(v, std::numeric_limits<Out>::max()))
          throw IoError(what + ": value out of range for int32");
      }
      out[i] = static_cast<Out>(v);
    }
  };

  bool ok = true;
  if constexpr (std::is_floating_point_v<Out>) {
    if (kind == 'f' && itemsize == 4) convert(std::type_identity<float>{});
    else if (kind == 'f' && itemsize == 8) convert(std::type_identity<double>{});
    else if (kind == 'i' && itemsize == 2) convert(std::type_identity<std::int16_t>{});
    else if (kind == 'u' && itemsize == 2) convert(std::type_identity<std::uint16_t>{});
    else if (kind == 'i' && itemsize == 4) convert(std::type_identity<std::int32_t>{});
    else if (kind == 'u' && itemsize == 1) convert(std::type_identity<std::uint8_t>{});
    else ok = false;
  } else {
    if (kind == 'i' && itemsize == 4) convert(std::type_identity<std::int32_t>{});
    else if (kind == 'i' && itemsize == 8) convert(std::type_identity<std::int64_t>{});
    else if (kind == 'i' && itemsize == 2) convert(std::type_identity<std::int16_t>{});
    else if (kind == 'i' && itemsize == 1) convert(std::type_identity<std::int8_t>{});
    else if (kind == 'u' && itemsize == 1) convert(std::type_identity<std::uint8_t>{});
    else if (kind == 'u' && itemsize == 2) convert(std::type_identity<std::uint16_t>{});
    else if (kind == 'u' && itemsize == 4) convert(std::type_identity<std::uint32_t>{});
    else ok = false;
  }
  if (!ok) throw IoError(what + ": unsupported dtype '" + d + "'");

  if (header.fortran_order && header.shape.size() > 1) {
    // Column-major to row-major.
    const auto& s = header.shape;
    std::vector<Out> c_order(count);
    std::vector<std::size_t> idx(s.size(), 0);
    for (std::size_t f = 0; f < count; ++f) {
      std::size_t c = 0;
      for (std::size_t k = 0; k < s.size(); ++k) c = c * s[k] + idx[k];
      c_order[c] = out[f];
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (++idx[k] < s[k]) break;
        idx[k] = 0;
      }
    }
    out.swap(c_order);
  }
  return out;
}

template <typename T>
std::vector<char> encode_le(std::span<const T> values) {
  std::vector<char> bytes(values.size() * sizeof(T));
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto raw = std::bit_cast<std::array<char, sizeof(T)>>(values[i]);
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    std::memcpy(bytes.data() + i * sizeof(T), raw.data(), sizeof(T));
  }
  return bytes;
}

}  // namespace

NpyHeader parse_npy_header(const std::vector<char>& buffer) {
  if (buffer.size() < kMagicLen + 4 || std::memcmp(buffer.data(), kMagic, kMagicLen) != 0)
    throw IoError("not an npy file (bad magic)");
  const auto major = static_cast<unsigned char>(buffer[6]);
  std::size_t len = 0;
  std::size_t prefix = 0;
  if (major == 1) {
    len = static_cast<unsigned char>(buffer[8]) | (static_cast<unsigned char>(buffer[9]) << 8);
    prefix = 10;
  } else if (major == 2 || major == 3) {
    if (buffer.size() < 12) throw IoError("npy header truncated");
    for (int i = 3; i >= 0; --i) len = (len << 8) | static_cast<unsigned char>(buffer[8 + i]);
    prefix = 12;
  } else {
    throw IoError("unsupported npy version " + std::to_string(major));
  }
  if (buffer.size() < prefix + len) throw IoError("npy header truncated");
  const std::string_view dict(buffer.data() + prefix, len);
  if (dict.find('{') == std::string_view::npos || dict.find('}') == std::string_view::npos)
    throw IoError("npy header is not a dict literal");

  NpyHeader h;
  auto descr = dict_value(dict, "descr");
  if (descr.size() < 2 || (descr.front() != '\'' && descr.front() != '"'))
    throw IoError("npy header has a malformed descr");
  h.descr = std::string(descr.substr(1, descr.size() - 2));
  const auto fortran = dict_value(dict, "fortran_order");
  if (fortran == "True") h.fortran_order = true;
  else if (fortran == "False") h.fortran_order = false;
  else throw IoError("npy header has a malformed fortran_order");
  h.shape = parse_shape(dict_value(dict, "shape"));
  h.header_bytes = prefix + len;
  return h;
}

std::string make_npy_header(const std::string& descr, const std::vector<std::size_t>& shape) {
  std::ostringstream dict;
  dict << "{'descr': '" << descr << "', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    dict << shape[i];
    if (shape.size() == 1 || i + 1 < shape.size()) dict << ",";
    if (i + 1 < shape.size()) dict << " ";
  }
  dict << "), }";
  std::string body = dict.str();
  // Pad with spaces so magic + version + length + dict + '\n' is 64-aligned.
  const std::size_t unpadded = kMagicLen + 2 + 2 + body.size() + 1;
  body.append((64 - unpadded % 64) % 64, ' ');
  body.push_back('\n');
  if (body.size() > 0xFFFF) throw IoError("npy header too long");

  std::string header(kMagic, kMagicLen);
  header.push_back('\x01');
  header.push_back('\x00');
  header.push_back(static_cast<char>(body.size() & 0xFF));
  header.push_back(static_cast<char>((body.size() >> 8) & 0xFF));
  return header + body;
}

HyperCube load_cube(const std::filesystem::path& path) {
  const auto buffer = read_file(path);
  const auto header = parse_npy_header(buffer);
  const std::string what = "load_cube(" + path.string() + ")";
  if (header.shape.size() != 3)
    throw ShapeError(what + ": expected a 3-D (H, W, L) array, got " +
                     std::to_string(header.shape.size()) + "-D");
  auto values = decode_payload<float>(buffer, header, what);
  return HyperCube(header.shape[0], header.shape[1], header.shape[2], std::move(values));
}

void save_cube(const std::filesystem::path& path, const HyperCube& cube) {
  const auto header = make_npy_header("<f4", {cube.height(), cube.width(), cube.bands()});
  const auto bytes = encode_le<float>(cube.values());
  write_file(path, header, bytes.data(), bytes.size());
}

LabelMap load_labels(const std::filesystem::path& path) {
  const auto buffer = read_file(path);
  const auto header = parse_npy_header(buffer);
  const std::string what = "load_labels(" + path.string() + ")";
  if (header.shape.size() != 2)
    throw ShapeError(what + ": expected a 2-D (H, W) array, got " +
                     std::to_string(header.shape.size()) + "-D");
  auto values = decode_payload<std::int32_t>(buffer, header, what);
  if (std::any_of(values.begin(), values.end(), [](std::int32_t v) { return v < 0; }))
    throw IoError(what + ": negative labels");
  return LabelMap(header.shape[0], header.shape[1], std::move(values));
}

void save_labels(const std::filesystem::path& path, const LabelMap& labels) {
  const auto header = make_npy_header("<i4", {labels.height(), labels.width()});
  const auto bytes = encode_le<std::int32_t>(labels.labels());
  write_file(path, header, bytes.data(), bytes.size());
}

}  // namespace hyperseg
