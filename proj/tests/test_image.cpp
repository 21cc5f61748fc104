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

#include <cmath>
#include <random>

#include "lumen/image.hpp"
#include "oracles.hpp"

namespace {

using namespace lumen;

TEST(Image, RejectsEmptyExtent) {
  EXPECT_THROW(GrayImage(0, 3), Error);
  EXPECT_THROW(GrayImage(3, -1), Error);
  try {
    GrayImage(2, 2, std::vector<std::uint8_t>(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSize);
  }
}

TEST(Image, ContainsChecksEveryEdge) {
  GrayImage img(10, 8);
  EXPECT_TRUE(img.contains({0, 0, 10, 8}));
  EXPECT_TRUE(img.contains({9, 7, 1, 1}));
  EXPECT_FALSE(img.contains({9, 7, 2, 1}));
  EXPECT_FALSE(img.contains({-1, 0, 1, 1}));
  EXPECT_FALSE(img.contains({0, 0, 0, 1}));
}

TEST(Iou, KnownOverlaps) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {10, 0, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 10, 10}), 50.0 / 150.0);
}

TEST(RgbToGray, Luma) {
  auto gray_of = [](Rgb p) { return rgb_to_gray(RgbImage(1, 1, p)).at(0, 0); };
  EXPECT_EQ(gray_of({255, 255, 255}), 255);
  EXPECT_EQ(gray_of({0, 0, 0}), 0);
  EXPECT_EQ(gray_of({255, 0, 0}), 76);  // 76.245
  EXPECT_EQ(gray_of({0, 255, 0}), 150);  // 149.685
  EXPECT_EQ(gray_of({0, 0, 255}), 29);   // 29.07
}

TEST(NormalizeRgb, FlatImageUnchanged) {
  RgbImage img(3, 2, Rgb{100, 100, 100});
  EXPECT_EQ(normalize_rgb(img), img);
}

TEST(NormalizeRgb, EndpointsStretch) {
  RgbImage img(3, 1);
  img.at(0, 0) = {50, 70, 150};
  img.at(1, 0) = {150, 150, 50};
  img.at(2, 0) = {75, 125, 60};
  const RgbImage out = normalize_rgb(img);
  EXPECT_EQ(out.at(0, 0), (Rgb{0, 51, 255}));
  EXPECT_EQ(out.at(1, 0), (Rgb{255, 255, 0}));
  EXPECT_EQ(out.at(2, 0).r, 64);  // 63.75
}

TEST(NormalizeRgb, FullRangeUnchanged) {
  std::mt19937 rng(7);
  RgbImage img = oracle::random_rgb(rng, 9, 9);
  img.at(0, 0) = {0, 12, 255};
  EXPECT_EQ(normalize_rgb(img), img);
}

TEST(NormalizeRgb, Idempotent) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> lo(0, 120), span(1, 120);
  for (int t = 0; t < 50; ++t) {
    const int a = lo(rng), b = a + span(rng);
    std::uniform_int_distribution<int> px(a, b);
    RgbImage img(7, 5);
    for (auto& p : img.pixels()) {
      p = {static_cast<std::uint8_t>(px(rng)), static_cast<std::uint8_t>(px(rng)), static_cast<std::uint8_t>(px(rng))};
    }
    const RgbImage once = normalize_rgb(img);
    EXPECT_EQ(normalize_rgb(once), once);
  }
}

TEST(RgbToHsv, Primaries) {
  EXPECT_EQ(rgb_to_hsv(Rgb{255, 0, 0}), (Hsv{0.0, 1.0, 1.0}));
  EXPECT_EQ(rgb_to_hsv(Rgb{0, 0, 0}), (Hsv{0.0, 0.0, 0.0}));
  EXPECT_EQ(rgb_to_hsv(Rgb{0, 255, 255}), (Hsv{180.0, 1.0, 1.0}));
  EXPECT_EQ(rgb_to_hsv(Rgb{128, 128, 128}), (Hsv{0.0, 0.0, 128 / 255.0}));
  const Hsv magenta_red = rgb_to_hsv(Rgb{255, 0, 1});
  EXPECT_GT(magenta_red.h, 359.0);
  EXPECT_LT(magenta_red.h, 360.0);
}

TEST(RgbToHsv, RangesHold) {
  std::mt19937 rng(3);
  const HsvImage hsv = rgb_to_hsv(oracle::random_rgb(rng, 40, 40));
  for (const Hsv& p : hsv.pixels()) {
    EXPECT_GE(p.h, 0.0);
    EXPECT_LT(p.h, 360.0);
    EXPECT_GE(p.s, 0.0);
    EXPECT_LE(p.s, 1.0);
    EXPECT_GE(p.v, 0.0);
    EXPECT_LE(p.v, 1.0);
    if (p.s == 0.0) {
      EXPECT_EQ(p.h, 0.0);
    }
  }
}

TEST(RgbToHsv, InverseWithinOne) {
  std::mt19937 rng(5);
  const RgbImage rgb = oracle::random_rgb(rng, 64, 64);
  const HsvImage hsv = rgb_to_hsv(rgb);
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    const Hsv& p = hsv.pixels()[i];
    if (p.s <= 0.0) continue;
    const auto [r, g, b] = oracle::hsv_to_rgb(p.h, p.s, p.v);
    const Rgb& q = rgb.pixels()[i];
    EXPECT_NEAR(r, q.r, 1.0);
    EXPECT_NEAR(g, q.g, 1.0);
    EXPECT_NEAR(b, q.b, 1.0);
  }
}

TEST(AdjustBrightness, GainCases) {
  std::mt19937 rng(9);
  const RgbImage img = oracle::random_rgb(rng, 6, 6);
  EXPECT_EQ(adjust_brightness(img, 1.0), img);
  EXPECT_EQ(adjust_brightness(img, 0.0), RgbImage(6, 6, Rgb{0, 0, 0}));
  EXPECT_EQ(adjust_brightness(RgbImage(1, 1, Rgb{200, 100, 1}), 2.0).at(0, 0), (Rgb{255, 200, 2}));
  EXPECT_EQ(adjust_brightness(RgbImage(1, 1, Rgb{3, 5, 7}), 0.5).at(0, 0), (Rgb{2, 3, 4}));
  EXPECT_THROW(adjust_brightness(img, -0.1), Error);
  EXPECT_THROW(adjust_brightness(img, std::nan("")), Error);
}

TEST(ResizeBilinear, IdentitySize) {
  std::mt19937 rng(1);
  const GrayImage img = oracle::random_gray(rng, 13, 7);
  EXPECT_EQ(resize_bilinear(img, 13, 7), img);
}

TEST(ResizeBilinear, SinglePixelBroadcasts) {
  EXPECT_EQ(resize_bilinear(GrayImage(1, 1, 42), 3, 3), GrayImage(3, 3, 42));
}

TEST(ResizeBilinear, TwoToFour) {
  GrayImage img(2, 1, std::vector<std::uint8_t>{0, 255});
  // source x = (d + 0.5) / 2 - 0.5 -> -0.25, 0.25, 0.75, 1.25 (clamped to [0, 1])
  EXPECT_EQ(resize_bilinear(img, 4, 1).pixels()[0], 0);
  EXPECT_EQ(resize_bilinear(img, 4, 1), GrayImage(4, 1, std::vector<std::uint8_t>{0, 64, 191, 255}));
}

TEST(ResizeBilinear, RejectsEmptyTarget) {
  try {
    resize_bilinear(GrayImage(2, 2), 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSize);
  }
}

TEST(ResizeBilinear, StaysWithinSourceRange) {
  std::mt19937 rng(21);
  for (int t = 0; t < 20; ++t) {
    const GrayImage img = oracle::random_gray(rng, 5 + t, 3 + t / 2);
    const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
    const GrayImage out = resize_bilinear(img, 64, 64);
    for (auto v : out.pixels()) {
      EXPECT_GE(v, *lo);
      EXPECT_LE(v, *hi);
    }
  }
}

}  // namespace
