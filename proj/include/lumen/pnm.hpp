// Copyright 2026 The Lumen Vision Authors
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

// Netpbm PGM/PPM codec (P2, P3, P5, P6; maxval 255 only).

#ifndef LUMEN_PNM_HPP
#define LUMEN_PNM_HPP

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/image.hpp"

namespace lumen {

using Bytes = std::vector<std::uint8_t>;
using AnyImage = std::variant<GrayImage, RgbImage>;

namespace detail {

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one unsigned decimal token.
  // Returns false at end of input.
  bool next_uint(unsigned long& out, ErrorCode on_garbage) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return false;
    if (!std::isdigit(bytes_[pos_])) throw Error(on_garbage, "expected a decimal number");
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) throw Error(on_garbage, "number too large");
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw Error(on_garbage, "unexpected character after number");
    }
    out = v;
    return true;
  }

  unsigned long header_uint() {
    unsigned long v = 0;
    if (!next_uint(v, ErrorCode::MalformedHeader)) {
      throw Error(ErrorCode::MalformedHeader, "header ended early");
    }
    return v;
  }

  // Binary payload starts after exactly one whitespace byte following maxval.
  std::span<const std::uint8_t> payload() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::MalformedHeader, "missing whitespace after maxval");
    }
    return bytes_.subspan(pos_ + 1);
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline std::uint8_t ascii_sample(PnmReader& in) {
  unsigned long v = 0;
  if (!in.next_uint(v, ErrorCode::MalformedHeader)) {
    throw Error(ErrorCode::TruncatedData, "fewer samples than the header declares");
  }
  if (v > 255) throw Error(ErrorCode::UnsupportedFormat, "sample exceeds maxval 255");
  return static_cast<std::uint8_t>(v);
}

}  // namespace detail

inline AnyImage load_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::UnsupportedFormat, "not a PNM file");
  }
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(ErrorCode::UnsupportedFormat, std::string("unsupported magic P") + kind);
  }
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw Error(ErrorCode::MalformedHeader, "magic must be followed by whitespace");
  }
  detail::PnmReader in(bytes);
  in.advance(2);
  const unsigned long width = in.header_uint();
  const unsigned long height = in.header_uint();
  const unsigned long maxval = in.header_uint();
  if (width == 0 || height == 0 || width > 65536 || height > 65536) {
    throw Error(ErrorCode::MalformedHeader, "invalid dimensions");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat, "maxval must be 255, got " + std::to_string(maxval));
  }
  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';

  if (binary) {
    auto payload = in.payload();
    const std::size_t need = pixels * (color ? 3 : 1);
    if (payload.size() < need) {
      throw Error(ErrorCode::TruncatedData, "expected " + std::to_string(need) + " bytes, got " +
                                                std::to_string(payload.size()));
    }
    if (!color) return GrayImage(w, h, std::vector<std::uint8_t>(payload.begin(), payload.begin() + need));
    std::vector<Rgb> rgb(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
      rgb[i] = {payload[3 * i], payload[3 * i + 1], payload[3 * i + 2]};
    }
    return RgbImage(w, h, std::move(rgb));
  }

  if (!color) {
    std::vector<std::uint8_t> gray(pixels);
    for (auto& v : gray) v = detail::ascii_sample(in);
    return GrayImage(w, h, std::move(gray));
  }
  std::vector<Rgb> rgb(pixels);
  for (auto& p : rgb) {
    p.r = detail::ascii_sample(in);
    p.g = detail::ascii_sample(in);
    p.b = detail::ascii_sample(in);
  }
  return RgbImage(w, h, std::move(rgb));
}

inline AnyImage load_pnm(std::string_view bytes) {
  return load_pnm(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

namespace detail {

inline Bytes pnm_header(const char* magic, int w, int h) {
  const std::string head = std::string(magic) + "\n" + std::to_string(w) + " " +
                           std::to_string(h) + "\n255\n";
  return Bytes(head.begin(), head.end());
}

}  // namespace detail

inline Bytes save_pnm(const GrayImage& img) {
  Bytes out = detail::pnm_header("P5", img.width(), img.height());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

inline Bytes save_pnm(const RgbImage& img) {
  Bytes out = detail::pnm_header("P6", img.width(), img.height());
  out.reserve(out.size() + 3 * img.size());
  for (const Rgb& p : img.pixels()) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

inline Bytes save_pnm(const AnyImage& img) {
  return std::visit([](const auto& i) { return save_pnm(i); }, img);
}

/// Collapses a decoded PNM to luminance.
inline GrayImage to_gray(const AnyImage& img) {
  if (const auto* g = std::get_if<GrayImage>(&img)) return *g;
  return rgb_to_gray(std::get<RgbImage>(img));
}

inline RgbImage to_rgb(const AnyImage& img) {
  if (const auto* c = std::get_if<RgbImage>(&img)) return *c;
  return gray_to_rgb(std::get<GrayImage>(img));
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

inline AnyImage load_pnm_file(const std::filesystem::path& path) { return load_pnm(read_file(path)); }

}  // namespace lumen

#endif  // LUMEN_PNM_HPP
