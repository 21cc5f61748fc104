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

#ifndef LUMEN_GAUSSIAN_HPP
#define LUMEN_GAUSSIAN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/image.hpp"

namespace lumen {

/// Normalized, symmetric 1-D Gaussian taps; weights[radius] is the center.
struct GaussianKernel {
  double sigma = 1.0;
  int radius = 0;
  std::vector<double> weights;

  double center() const noexcept { return weights[static_cast<std::size_t>(radius)]; }
};

inline GaussianKernel gaussian_kernel(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw Error(ErrorCode::InvalidSigma, "sigma must be finite and > 0");
  }
  if (sigma > 1e4) throw Error(ErrorCode::InvalidSigma, "sigma too large");
  GaussianKernel k;
  k.sigma = sigma;
  k.radius = static_cast<int>(std::ceil(3.0 * sigma));
  k.weights.resize(static_cast<std::size_t>(2 * k.radius + 1));
  const double denom = 2.0 * sigma * sigma;
  double total = 0.0;
  for (int i = -k.radius; i <= k.radius; ++i) {
    const double w = std::exp(-(i * i) / denom);
    k.weights[static_cast<std::size_t>(i + k.radius)] = w;
    total += w;
  }
  for (double& w : k.weights) w /= total;
  return k;
}

/// Separable Gaussian blur (horizontal, then vertical) with clamp-to-edge
/// borders. The intermediate pass is kept in floating point; only the final
/// result is rounded.
inline GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
  const GaussianKernel k = gaussian_kernel(sigma);
  const int w = img.width();
  const int h = img.height();
  const int r = k.radius;
  std::vector<double> tmp(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));

  for (int y = 0; y < h; ++y) {
    auto src = img.row(y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) {
        const int sx = std::clamp(x + t, 0, w - 1);
        acc += k.weights[static_cast<std::size_t>(t + r)] * src[static_cast<std::size_t>(sx)];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) {
        const int sy = std::clamp(y + t, 0, h - 1);
        acc += k.weights[static_cast<std::size_t>(t + r)] * tmp[static_cast<std::size_t>(sy) * w + x];
      }
      out.at(x, y) = detail::clamp_byte(acc);
    }
  }
  return out;
}

}  // namespace lumen

#endif  // LUMEN_GAUSSIAN_HPP
