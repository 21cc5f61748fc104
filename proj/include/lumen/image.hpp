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

#ifndef LUMEN_IMAGE_HPP
#define LUMEN_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lumen/error.hpp"

namespace lumen {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Hue in degrees [0,360), saturation and value in [0,1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  friend bool operator==(const Hsv&, const Hsv&) = default;
};

/// Integer pixel rectangle; (x, y) is the top-left corner.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  long long area() const noexcept { return static_cast<long long>(w) * h; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Intersection over union of two rectangles; 0 when either is empty.
inline double iou(const Rect& a, const Rect& b) noexcept {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.x + a.w, b.x + b.w);
  const int y1 = std::min(a.y + a.h, b.y + b.h);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  const double inter = static_cast<double>(x1 - x0) * (y1 - y0);
  const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

/// Row-major raster of `Pixel` values. Dimensions are always at least 1x1.
template <typename Pixel>
class Image {
 public:
  using value_type = Pixel;

  Image(int width, int height, Pixel fill = Pixel{})
      : width_(checked(width)), height_(checked(height)),
        data_(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), fill) {}

  Image(int width, int height, std::vector<Pixel> data)
      : width_(checked(width)), height_(checked(height)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
      throw Error(ErrorCode::InvalidSize, "pixel buffer does not match " + std::to_string(width_) +
                                              "x" + std::to_string(height_));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  Pixel& at(int x, int y) noexcept { return data_[index(x, y)]; }
  const Pixel& at(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<Pixel> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const Pixel> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::span<Pixel> pixels() noexcept { return data_; }
  std::span<const Pixel> pixels() const noexcept { return data_; }

  bool contains(const Rect& r) const noexcept {
    return r.w >= 1 && r.h >= 1 && r.x >= 0 && r.y >= 0 && r.x <= width_ - r.w &&
           r.y <= height_ - r.h;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  static int checked(int extent) {
    if (extent < 1) throw Error(ErrorCode::InvalidSize, "image extent must be >= 1");
    return extent;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Pixel> data_;
};

using GrayImage = Image<std::uint8_t>;
using RgbImage = Image<Rgb>;
using HsvImage = Image<Hsv>;

namespace detail {

inline std::uint8_t clamp_byte(double v) noexcept {
  // round half up, then clamp
  const double r = std::floor(v + 0.5);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

template <typename In, typename Out, typename Fn>
Image<Out> map_pixels(const Image<In>& img, Fn&& fn) {
  Image<Out> out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  std::transform(src.begin(), src.end(), dst.begin(), std::forward<Fn>(fn));
  return out;
}

}  // namespace detail

/// BT.601 luma.
inline GrayImage rgb_to_gray(const RgbImage& img) {
  return detail::map_pixels<Rgb, std::uint8_t>(img, [](const Rgb& p) {
    return detail::clamp_byte(0.299 * p.r + 0.587 * p.g + 0.114 * p.b);
  });
}

inline RgbImage gray_to_rgb(const GrayImage& img) {
  return detail::map_pixels<std::uint8_t, Rgb>(img, [](std::uint8_t v) { return Rgb{v, v, v}; });
}

/// Joint min-max stretch over all three channels. A flat image is returned as is.
inline RgbImage normalize_rgb(const RgbImage& img) {
  int lo = 255;
  int hi = 0;
  for (const Rgb& p : img.pixels()) {
    lo = std::min({lo, int{p.r}, int{p.g}, int{p.b}});
    hi = std::max({hi, int{p.r}, int{p.g}, int{p.b}});
  }
  if (hi == lo) return img;
  const double gain = 255.0 / static_cast<double>(hi - lo);
  auto stretch = [&](std::uint8_t v) { return detail::clamp_byte((v - lo) * gain); };
  return detail::map_pixels<Rgb, Rgb>(
      img, [&](const Rgb& p) { return Rgb{stretch(p.r), stretch(p.g), stretch(p.b)}; });
}

inline Hsv rgb_to_hsv(const Rgb& p) noexcept {
  const int mx = std::max({int{p.r}, int{p.g}, int{p.b}});
  const int mn = std::min({int{p.r}, int{p.g}, int{p.b}});
  const double delta = mx - mn;
  Hsv out;
  out.v = mx / 255.0;
  if (mx == 0 || delta == 0.0) return out;  // achromatic: canonical h = 0
  out.s = delta / mx;
  double h;
  if (mx == p.r) {
    h = 60.0 * ((p.g - p.b) / delta);
  } else if (mx == p.g) {
    h = 60.0 * ((p.b - p.r) / delta + 2.0);
  } else {
    h = 60.0 * ((p.r - p.g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

inline HsvImage rgb_to_hsv(const RgbImage& img) {
  return detail::map_pixels<Rgb, Hsv>(img, [](const Rgb& p) { return rgb_to_hsv(p); });
}

/// Per-channel multiplicative gain with clamping; stands in for lighting changes.
inline RgbImage adjust_brightness(const RgbImage& img, double gain) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) {
    throw Error(ErrorCode::InvalidArgument, "brightness gain must be finite and >= 0");
  }
  auto scale = [gain](std::uint8_t v) { return detail::clamp_byte(v * gain); };
  return detail::map_pixels<Rgb, Rgb>(
      img, [&](const Rgb& p) { return Rgb{scale(p.r), scale(p.g), scale(p.b)}; });
}

/// Bilinear resampling with pixel-center alignment and clamped source coordinates.
inline GrayImage resize_bilinear(const GrayImage& img, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1) {
    throw Error(ErrorCode::InvalidSize, "target size must be at least 1x1");
  }
  struct Tap {
    int i0, i1;
    double f;
  };
  auto taps = [](int src, int dst) {
    std::vector<Tap> out(static_cast<std::size_t>(dst));
    const double ratio = static_cast<double>(src) / dst;
    for (int d = 0; d < dst; ++d) {
      double s = (d + 0.5) * ratio - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(src - 1));
      const int i0 = static_cast<int>(std::floor(s));
      const int i1 = std::min(i0 + 1, src - 1);
      out[static_cast<std::size_t>(d)] = {i0, i1, s - i0};
    }
    return out;
  };
  const auto xs = taps(img.width(), new_w);
  const auto ys = taps(img.height(), new_h);

  GrayImage out(new_w, new_h);
  for (int y = 0; y < new_h; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < new_w; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double top = img.at(tx.i0, ty.i0) * (1.0 - tx.f) + img.at(tx.i1, ty.i0) * tx.f;
      const double bot = img.at(tx.i0, ty.i1) * (1.0 - tx.f) + img.at(tx.i1, ty.i1) * tx.f;
      out.at(x, y) = detail::clamp_byte(top * (1.0 - ty.f) + bot * ty.f);
    }
  }
  return out;
}

}  // namespace lumen

#endif  // LUMEN_IMAGE_HPP
