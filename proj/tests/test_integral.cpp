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

#include <gtest/gtest.h>

#include <random>

#include "lumen/integral.hpp"
#include "oracles.hpp"

namespace {

using namespace lumen;

TEST(IntegralImage, SinglePixel) {
  const IntegralImage ii = integral_image(GrayImage(1, 1, 5));
  EXPECT_EQ(ii.at(0, 0), 0u);
  EXPECT_EQ(ii.at(1, 0), 0u);
  EXPECT_EQ(ii.at(0, 1), 0u);
  EXPECT_EQ(ii.at(1, 1), 5u);
  EXPECT_EQ(squared_integral_image(GrayImage(1, 1, 5)).at(1, 1), 25u);
}

TEST(IntegralImage, TwoByTwo) {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4});
  const IntegralImage ii = integral_image(img);
  EXPECT_EQ(ii.at(1, 1), 1u);
  EXPECT_EQ(ii.at(2, 1), 3u);
  EXPECT_EQ(ii.at(1, 2), 4u);
  EXPECT_EQ(ii.at(2, 2), 10u);
  EXPECT_EQ(rect_sum(ii, 0, 0, 2, 2), 10u);
  EXPECT_EQ(rect_sum(ii, 1, 1, 1, 1), 4u);
  EXPECT_EQ(rect_sum(ii, Rect{0, 1, 2, 1}), 7u);
}

TEST(IntegralImage, ConstantSquared) {
  const IntegralImage sq = squared_integral_image(GrayImage(13, 9, 200));
  EXPECT_EQ(sq.total(), 200ull * 200ull * 13ull * 9ull);
}

TEST(IntegralImage, MatchesNaiveSums) {
  std::mt19937 rng(8);
  for (int t = 0; t < 10; ++t) {
    const GrayImage img = oracle::random_gray(rng, 8, 8);
    const IntegralImage ii = integral_image(img);
    const IntegralImage sq = squared_integral_image(img);
    for (int y = 0; y <= 8; ++y) {
      for (int x = 0; x <= 8; ++x) {
        EXPECT_EQ(ii.at(x, y), oracle::naive_sum(img, 0, 0, x, y));
        EXPECT_EQ(sq.at(x, y), oracle::naive_sum(img, 0, 0, x, y, true));
      }
    }
  }
}

TEST(IntegralImage, BordersZeroAndMonotone) {
  std::mt19937 rng(12);
  const GrayImage img = oracle::random_gray(rng, 31, 17);
  const IntegralImage ii = integral_image(img);
  for (int x = 0; x <= 31; ++x) EXPECT_EQ(ii.at(x, 0), 0u);
  for (int y = 0; y <= 17; ++y) EXPECT_EQ(ii.at(0, y), 0u);
  for (int y = 1; y <= 17; ++y) {
    for (int x = 1; x <= 31; ++x) {
      EXPECT_GE(ii.at(x, y), ii.at(x - 1, y));
      EXPECT_GE(ii.at(x, y), ii.at(x, y - 1));
    }
  }
  EXPECT_EQ(ii.total(), oracle::naive_sum(img, 0, 0, 31, 17));
}

TEST(RectSum, ExhaustiveOnSmallImages) {
  std::mt19937 rng(4);
  for (int w = 1; w <= 8; ++w) {
    for (int h = 1; h <= 8; h += 3) {
      const GrayImage img = oracle::random_gray(rng, w, h);
      const IntegralImage ii = integral_image(img);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          for (int rh = 1; y + rh <= h; ++rh) {
            for (int rw = 1; x + rw <= w; ++rw) {
              ASSERT_EQ(rect_sum(ii, x, y, rw, rh), oracle::naive_sum(img, x, y, rw, rh));
            }
          }
        }
      }
    }
  }
}

TEST(RectSum, RandomRectsOnLargerImages) {
  std::mt19937 rng(200);
  const GrayImage img = oracle::random_gray(rng, 97, 61);
  const IntegralImage ii = integral_image(img);
  for (int t = 0; t < 200; ++t) {
    const int x = std::uniform_int_distribution<int>(0, 96)(rng);
    const int y = std::uniform_int_distribution<int>(0, 60)(rng);
    const int w = std::uniform_int_distribution<int>(1, 97 - x)(rng);
    const int h = std::uniform_int_distribution<int>(1, 61 - y)(rng);
    EXPECT_EQ(rect_sum(ii, x, y, w, h), oracle::naive_sum(img, x, y, w, h));
  }
}

TEST(RectSum, OutOfBounds) {
  const IntegralImage ii = integral_image(GrayImage(4, 4, 1));
  for (const Rect r : {Rect{0, 0, 5, 1}, Rect{-1, 0, 1, 1}, Rect{3, 3, 2, 1}, Rect{0, 0, 0, 1}, Rect{0, 4, 1, 1}}) {
    try {
      rect_sum(ii, r);
      ADD_FAILURE() << r.x << "," << r.y << "," << r.w << "," << r.h;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
    }
  }
}

TEST(IntegralImage, NoOverflowAtFullWhite) {
  const GrayImage img(4096, 4096, 255);
  EXPECT_EQ(squared_integral_image(img).total(), 255ull * 255ull * 4096ull * 4096ull);
}

}  // namespace
