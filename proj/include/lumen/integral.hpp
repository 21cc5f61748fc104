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

#ifndef LUMEN_INTEGRAL_HPP
#define LUMEN_INTEGRAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/image.hpp"

namespace lumen {

/// Summed-area table with an exclusive border: entry (x, y) holds the sum of
/// all pixels with x' < x and y' < y, so row 0 and column 0 are zero and the
/// table is (width+1) x (height+1).
///
/// 64-bit entries are exact for 8-bit images up to 2^16 x 2^16, including
/// the squared variant.
class IntegralImage {
 public:
  using value_type = std::uint64_t;

  IntegralImage(int image_width, int image_height)
      : width_(image_width), height_(image_height),
        table_(static_cast<std::size_t>(image_width + 1) * static_cast<std::size_t>(image_height + 1), 0) {}

  int image_width() const noexcept { return width_; }
  int image_height() const noexcept { return height_; }
  int stride() const noexcept { return width_ + 1; }

  value_type at(int x, int y) const noexcept { return table_[offset(x, y)]; }
  value_type& at(int x, int y) noexcept { return table_[offset(x, y)]; }

  const value_type* data() const noexcept { return table_.data(); }
  value_type total() const noexcept { return at(width_, height_); }

 private:
  std::size_t offset(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_ + 1) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<value_type> table_;
};

namespace detail {

template <typename Transform>
IntegralImage build_integral(const GrayImage& img, Transform&& f) {
  IntegralImage ii(img.width(), img.height());
  for (int y = 1; y <= img.height(); ++y) {
    auto src = img.row(y - 1);
    IntegralImage::value_type row_sum = 0;
    for (int x = 1; x <= img.width(); ++x) {
      // == i(x-1,y-1) + ii(x-1,y) + ii(x,y-1) - ii(x-1,y-1)
      row_sum += f(src[static_cast<std::size_t>(x - 1)]);
      ii.at(x, y) = row_sum + ii.at(x, y - 1);
    }
  }
  return ii;
}

}  // namespace detail

inline IntegralImage integral_image(const GrayImage& img) {
  return detail::build_integral(img, [](std::uint8_t v) { return IntegralImage::value_type{v}; });
}

inline IntegralImage squared_integral_image(const GrayImage& img) {
  return detail::build_integral(img, [](std::uint8_t v) {
    return static_cast<IntegralImage::value_type>(v) * v;
  });
}

/// Four-corner sum over the w x h rectangle at (x, y).
inline std::uint64_t rect_sum(const IntegralImage& ii, int x, int y, int w, int h) {
  if (w < 1 || h < 1 || x < 0 || y < 0 || x > ii.image_width() - w || y > ii.image_height() - h) {
    throw Error(ErrorCode::OutOfBounds, "rectangle (" + std::to_string(x) + "," + std::to_string(y) +
                                            "," + std::to_string(w) + "," + std::to_string(h) +
                                            ") outside " + std::to_string(ii.image_width()) + "x" +
                                            std::to_string(ii.image_height()));
  }
  return ii.at(x + w, y + h) - ii.at(x, y + h) - ii.at(x + w, y) + ii.at(x, y);
}

inline std::uint64_t rect_sum(const IntegralImage& ii, const Rect& r) {
  return rect_sum(ii, r.x, r.y, r.w, r.h);
}

}  // namespace lumen

#endif  // LUMEN_INTEGRAL_HPP
