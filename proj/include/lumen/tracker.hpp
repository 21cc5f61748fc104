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

// HSV color-threshold tracking: normalize, convert, segment, smooth, lock on
// the largest blob.

#ifndef LUMEN_TRACKER_HPP
#define LUMEN_TRACKER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/gaussian.hpp"
#include "lumen/image.hpp"

namespace lumen {

/// Inclusive HSV box. When h_min > h_max the hue range wraps through 0 degrees.
struct HsvThreshold {
  double h_min = 0.0;
  double h_max = 360.0;
  double s_min = 0.0;
  double s_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;

  bool hue_contains(double h) const noexcept {
    return h_min <= h_max ? (h >= h_min && h <= h_max) : (h >= h_min || h <= h_max);
  }
  bool contains(const Hsv& p) const noexcept {
    return hue_contains(p.h) && p.s >= s_min && p.s <= s_max && p.v >= v_min && p.v <= v_max;
  }
};

struct ThresholdMargin {
  double hue_deg = 10.0;
  double sat = 0.1;
  double val = 0.1;
};

enum class Bit : std::uint8_t { black = 0, white = 1 };
using BinaryMask = Image<Bit>;

struct TrackState {
  bool locked = false;
  double cx = 0.0;
  double cy = 0.0;
  Rect bbox;
  long long area = 0;
};

inline constexpr double kChromaticSaturation = 0.05;

/// HSV bounds of the chromatic pixels (s > 0.05) inside `seed`, widened by
/// `margin`. Hue bounds are the shortest arc covering every sampled hue.
inline HsvThreshold sample_threshold(const HsvImage& hsv, const Rect& seed, const ThresholdMargin& margin = {}) {
  if (!hsv.contains(seed)) throw Error(ErrorCode::SeedOutOfBounds, "seed rectangle outside the frame");
  std::vector<double> hues;
  double s_lo = 1.0, s_hi = 0.0, v_lo = 1.0, v_hi = 0.0;
  for (int y = seed.y; y < seed.y + seed.h; ++y) {
    for (int x = seed.x; x < seed.x + seed.w; ++x) {
      const Hsv& p = hsv.at(x, y);
      if (!(p.s > kChromaticSaturation)) continue;
      hues.push_back(p.h);
      s_lo = std::min(s_lo, p.s);
      s_hi = std::max(s_hi, p.s);
      v_lo = std::min(v_lo, p.v);
      v_hi = std::max(v_hi, p.v);
    }
  }
  if (hues.empty()) throw Error(ErrorCode::AchromaticSeed, "seed has no chromatic pixels");

  std::sort(hues.begin(), hues.end());
  // the covering arc starts right after the widest gap between sampled hues;
  // the wrap-around gap wins ties so an unwrapped [min, max] is preferred
  double lo = hues.front();
  double hi = hues.back();
  double widest = hues.front() + 360.0 - hues.back();
  for (std::size_t i = 0; i + 1 < hues.size(); ++i) {
    const double gap = hues[i + 1] - hues[i];
    if (gap > widest) {
      widest = gap;
      lo = hues[i + 1];
      hi = hues[i];
    }
  }

  HsvThreshold t;
  const double arc = 360.0 - widest;
  if (arc + 2.0 * margin.hue_deg >= 360.0) {
    t.h_min = 0.0;
    t.h_max = 360.0;
  } else {
    t.h_min = std::fmod(lo - margin.hue_deg + 360.0, 360.0);
    t.h_max = std::fmod(hi + margin.hue_deg, 360.0);
  }
  t.s_min = std::clamp(s_lo - margin.sat, 0.0, 1.0);
  t.s_max = std::clamp(s_hi + margin.sat, 0.0, 1.0);
  t.v_min = std::clamp(v_lo - margin.val, 0.0, 1.0);
  t.v_max = std::clamp(v_hi + margin.val, 0.0, 1.0);
  return t;
}

inline BinaryMask segment(const HsvImage& hsv, const HsvThreshold& t) {
  BinaryMask mask(hsv.width(), hsv.height());
  auto src = hsv.pixels();
  auto dst = mask.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = t.contains(src[i]) ? Bit::white : Bit::black;
  return mask;
}

/// Gaussian-smooths the mask as a 0/255 image and re-thresholds at 128.
inline BinaryMask denoise(const BinaryMask& mask, double sigma) {
  GrayImage gray(mask.width(), mask.height());
  std::transform(mask.pixels().begin(), mask.pixels().end(), gray.pixels().begin(),
                 [](Bit b) { return b == Bit::white ? std::uint8_t{255} : std::uint8_t{0}; });
  const GrayImage smooth = gaussian_smooth(gray, sigma);
  BinaryMask out(mask.width(), mask.height());
  std::transform(smooth.pixels().begin(), smooth.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) { return v >= 128 ? Bit::white : Bit::black; });
  return out;
}

/// Locks on the largest 4-connected white component. Equal areas resolve to
/// the component met first in raster order.
inline TrackState locate(const BinaryMask& mask, long long min_area) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<int> stack;
  TrackState best;

  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t start = static_cast<std::size_t>(y0) * w + x0;
      if (seen[start] || mask.at(x0, y0) != Bit::white) continue;
      seen[start] = 1;
      stack.assign(1, static_cast<int>(start));
      long long area = 0;
      double sx = 0.0, sy = 0.0;
      int xmin = x0, xmax = x0, ymin = y0, ymax = y0;
      while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const int x = idx % w;
        const int y = idx / w;
        ++area;
        sx += x;
        sy += y;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int k = 0; k < 4; ++k) {
          if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
          const std::size_t n = static_cast<std::size_t>(ny[k]) * w + nx[k];
          if (seen[n] || mask.at(nx[k], ny[k]) != Bit::white) continue;
          seen[n] = 1;
          stack.push_back(static_cast<int>(n));
        }
      }
      if (area > best.area) {
        best.area = area;
        best.cx = sx / static_cast<double>(area);
        best.cy = sy / static_cast<double>(area);
        best.bbox = {xmin, ymin, xmax - xmin + 1, ymax - ymin + 1};
      }
    }
  }
  best.locked = best.area > 0 && best.area >= min_area;
  if (!best.locked) best = TrackState{};
  return best;
}

/// 0.1% of the frame, at least one pixel.
inline long long default_min_area(int width, int height) {
  return std::max<long long>(1, static_cast<long long>(std::ceil(0.001 * width * height)));
}

inline TrackState track_step(const RgbImage& frame, const HsvThreshold& t, double sigma, long long min_area) {
  const HsvImage hsv = rgb_to_hsv(normalize_rgb(frame));
  return locate(denoise(segment(hsv, t), sigma), min_area);
}

}  // namespace lumen

#endif  // LUMEN_TRACKER_HPP
