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

// Sliding-window Haar cascade evaluation over integral images.
//
// Features are scaled to the window rather than rescaling the image. Scaled
// rectangle corners are rounded half-up, and for balanced features the first
// rectangle's weight is re-derived so that weighted areas still cancel after
// rounding. Stump thresholds are compared against the feature response
// (weighted rect sums divided by the window area) as
//   response < threshold * stddev(window).

#ifndef LUMEN_DETECTOR_HPP
#define LUMEN_DETECTOR_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "lumen/cascade.hpp"
#include "lumen/error.hpp"
#include "lumen/image.hpp"
#include "lumen/integral.hpp"

namespace lumen {

struct Detection {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  int neighbors = 0;

  Rect rect() const noexcept { return {x, y, w, h}; }
  friend bool operator==(const Detection&, const Detection&) = default;
};

struct DetectOptions {
  double scale_factor = 1.1;
  int min_neighbors = 3;
  int min_size = 0;          // 0: the model window
  double group_eps = 0.2;
  unsigned threads = 1;      // 0: hardware concurrency
};

inline int round_half_up(double v) noexcept { return static_cast<int>(std::floor(v + 0.5)); }

/// Standard deviation of the pixels inside `window`, or 1 for a flat window.
inline double window_variance_norm(const IntegralImage& ii, const IntegralImage& sq_ii, const Rect& window) {
  const double area = static_cast<double>(window.area());
  const double mean = static_cast<double>(rect_sum(ii, window)) / area;
  const double var = static_cast<double>(rect_sum(sq_ii, window)) / area - mean * mean;
  return var > 0.0 ? std::sqrt(var) : 1.0;
}

namespace detail {

// A cascade with every feature pre-scaled for one window scale. Rect corners
// are stored as offsets into the integral table relative to the window origin.
class ScaledCascade {
 public:
  ScaledCascade(const CascadeModel& model, double scale, int stride)
      : model_(&model), stride_(stride) {
    win_w_ = round_half_up(model.window_w * scale);
    win_h_ = round_half_up(model.window_h * scale);
    const double inv_area = 1.0 / (static_cast<double>(win_w_) * win_h_);
    features_.reserve(model.features.size());
    for (std::size_t fi = 0; fi < model.features.size(); ++fi) {
      const HaarFeature& f = model.features[fi];
      Feature sf;
      sf.count = static_cast<int>(f.rects.size());
      double rest = 0.0;
      for (int i = 0; i < sf.count; ++i) {
        const HaarRect& r = f.rects[static_cast<std::size_t>(i)];
        const int x0 = round_half_up(r.x * scale);
        const int y0 = round_half_up(r.y * scale);
        const int x1 = std::max(x0 + 1, round_half_up((r.x + r.w) * scale));
        const int y1 = std::max(y0 + 1, round_half_up((r.y + r.h) * scale));
        sf.bounds[i] = {x0, y0, x1 - x0, y1 - y0};
        if (x0 < 0 || y0 < 0 || x1 > win_w_ || y1 > win_h_) sf.inside = false;
        sf.p[i][0] = offset(x0, y0);
        sf.p[i][1] = offset(x1, y0);
        sf.p[i][2] = offset(x0, y1);
        sf.p[i][3] = offset(x1, y1);
        sf.weight[i] = r.weight;
        if (i > 0) rest += r.weight * static_cast<double>(sf.bounds[i].area());
      }
      if (f.balanced()) sf.weight[0] = -rest / static_cast<double>(sf.bounds[0].area());
      for (int i = 0; i < sf.count; ++i) sf.weight[i] *= inv_area;
      features_.push_back(sf);
    }
  }

  int window_w() const noexcept { return win_w_; }
  int window_h() const noexcept { return win_h_; }

  bool feature_inside(std::size_t fi) const noexcept { return features_[fi].inside; }

  // `origin` is the table offset of the window's top-left corner.
  double response(const std::uint64_t* table, std::size_t origin, std::size_t fi) const noexcept {
    const Feature& f = features_[fi];
    double v = 0.0;
    for (int i = 0; i < f.count; ++i) {
      const std::uint64_t* t = table + origin;
      const std::uint64_t s = t[f.p[i][3]] - t[f.p[i][1]] - t[f.p[i][2]] + t[f.p[i][0]];
      v += f.weight[i] * static_cast<double>(s);
    }
    return v;
  }

  // Returns the index of the first rejecting stage, or -1 when all pass.
  int first_rejecting_stage(const std::uint64_t* table, std::size_t origin, double norm) const noexcept {
    for (std::size_t s = 0; s < model_->stages.size(); ++s) {
      const CascadeStage& stage = model_->stages[s];
      double sum = 0.0;
      for (const WeakStump& stump : stage.stumps) {
        const double value = response(table, origin, stump.feature_index);
        sum += value < stump.threshold * norm ? stump.left_val : stump.right_val;
      }
      if (sum < stage.stage_threshold) return static_cast<int>(s);
    }
    return -1;
  }

 private:
  struct Feature {
    int count = 0;
    bool inside = true;
    Rect bounds[3];
    std::size_t p[3][4] = {};
    double weight[3] = {};
  };

  std::size_t offset(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(x);
  }

  const CascadeModel* model_;
  int stride_;
  int win_w_ = 0;
  int win_h_ = 0;
  std::vector<Feature> features_;
};

inline Rect scaled_window(const CascadeModel& model, int x, int y, double scale) {
  return {x, y, round_half_up(model.window_w * scale), round_half_up(model.window_h * scale)};
}

inline void require_window(const IntegralImage& ii, const Rect& win) {
  if (win.w < 1 || win.h < 1 || win.x < 0 || win.y < 0 || win.x > ii.image_width() - win.w ||
      win.y > ii.image_height() - win.h) {
    throw Error(ErrorCode::OutOfBounds, "scaled window does not fit in the image");
  }
}

inline std::size_t table_origin(const IntegralImage& ii, int x, int y) noexcept {
  return static_cast<std::size_t>(y) * static_cast<std::size_t>(ii.stride()) + static_cast<std::size_t>(x);
}

}  // namespace detail

/// Normalized response of one feature for the window at (win_x, win_y) and `scale`:
/// the weighted rectangle sums divided by the scaled window area.
inline double eval_feature(const CascadeModel& model, std::size_t feature_index, const IntegralImage& ii,
                           int win_x, int win_y, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be > 0");
  if (feature_index >= model.features.size()) {
    throw Error(ErrorCode::OutOfBounds, "feature index " + std::to_string(feature_index) + " out of range");
  }
  const Rect win = detail::scaled_window(model, win_x, win_y, scale);
  detail::require_window(ii, win);
  const detail::ScaledCascade scaled(model, scale, ii.stride());
  if (!scaled.feature_inside(feature_index)) {
    throw Error(ErrorCode::OutOfBounds, "feature " + std::to_string(feature_index) +
                                            " extends past the scaled window");
  }
  return scaled.response(ii.data(), detail::table_origin(ii, win_x, win_y), feature_index);
}

/// Runs the stage sequence on one window; true when every stage passes.
inline bool eval_window(const CascadeModel& model, const IntegralImage& ii, const IntegralImage& sq_ii,
                        int x, int y, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be > 0");
  const Rect win = detail::scaled_window(model, x, y, scale);
  detail::require_window(ii, win);
  const detail::ScaledCascade scaled(model, scale, ii.stride());
  for (std::size_t i = 0; i < model.features.size(); ++i) {
    if (!scaled.feature_inside(i)) {
      throw Error(ErrorCode::OutOfBounds, "feature " + std::to_string(i) + " extends past the scaled window");
    }
  }
  const double norm = window_variance_norm(ii, sq_ii, win);
  return scaled.first_rejecting_stage(ii.data(), detail::table_origin(ii, x, y), norm) < 0;
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

inline void sort_detections(std::vector<Detection>& dets) {
  std::sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
    return std::tie(a.y, a.x, a.w, a.h, a.neighbors) < std::tie(b.y, b.x, b.w, b.h, b.neighbors);
  });
}

}  // namespace detail

/// Two rects are similar when x, y, w and h each differ by at most
/// eps * (min(w1, w2) + min(h1, h2)) / 2.
inline bool similar_rects(const Rect& a, const Rect& b, double eps) noexcept {
  const double delta = eps * (std::min(a.w, b.w) + std::min(a.h, b.h)) * 0.5;
  return std::abs(a.x - b.x) <= delta && std::abs(a.y - b.y) <= delta && std::abs(a.w - b.w) <= delta &&
         std::abs(a.h - b.h) <= delta;
}

/// Clusters raw hits by the transitive closure of `similar_rects` and emits
/// the rounded mean rectangle of every cluster with more than
/// `min_neighbors` members.
inline std::vector<Detection> group_rectangles(std::span<const Rect> raw, int min_neighbors, double eps = 0.2) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
  const std::size_t n = raw.size();
  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (similar_rects(raw[i], raw[j], eps)) uf.unite(i, j);
    }
  }
  struct Acc {
    long long x = 0, y = 0, w = 0, h = 0;
    int count = 0;
  };
  std::vector<Acc> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    Acc& a = acc[uf.find(i)];
    a.x += raw[i].x;
    a.y += raw[i].y;
    a.w += raw[i].w;
    a.h += raw[i].h;
    ++a.count;
  }
  std::vector<Detection> out;
  for (const Acc& a : acc) {
    if (a.count == 0 || a.count <= min_neighbors) continue;
    const double c = a.count;
    out.push_back({round_half_up(a.x / c), round_half_up(a.y / c), round_half_up(a.w / c),
                   round_half_up(a.h / c), a.count});
  }
  detail::sort_detections(out);
  return out;
}

/// Every window position that passes all stages, in scan order
/// (scale ascending, then row, then column).
inline std::vector<Rect> scan_windows(const CascadeModel& model, const GrayImage& gray, const DetectOptions& opt) {
  if (gray.width() < model.window_w || gray.height() < model.window_h) {
    throw Error(ErrorCode::ImageTooSmall, std::to_string(gray.width()) + "x" + std::to_string(gray.height()) +
                                              " image is smaller than the " + std::to_string(model.window_w) +
                                              "x" + std::to_string(model.window_h) + " model window");
  }
  if (!(opt.scale_factor > 1.0) || !std::isfinite(opt.scale_factor)) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must be > 1");
  }
  const IntegralImage ii = integral_image(gray);
  const IntegralImage sq = squared_integral_image(gray);
  const int W = gray.width();
  const int H = gray.height();

  struct Level {
    detail::ScaledCascade cascade;
    int step;
  };
  std::vector<Level> levels;
  for (double scale = 1.0;; scale *= opt.scale_factor) {
    detail::ScaledCascade sc(model, scale, ii.stride());
    if (sc.window_w() > W || sc.window_h() > H) break;
    if (sc.window_w() < opt.min_size || sc.window_h() < opt.min_size) continue;
    levels.push_back({std::move(sc), std::max(1, round_half_up(scale))});
  }

  // one job per (level, row); results are stitched back in job order
  struct Job {
    std::size_t level;
    int y;
  };
  std::vector<Job> jobs;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Level& lv = levels[l];
    for (int y = 0; y + lv.cascade.window_h() <= H; y += lv.step) jobs.push_back({l, y});
  }
  std::vector<std::vector<Rect>> hits(jobs.size());

  auto run = [&](std::size_t j) {
    const Level& lv = levels[jobs[j].level];
    const int y = jobs[j].y;
    const int ww = lv.cascade.window_w();
    const int wh = lv.cascade.window_h();
    for (int x = 0; x + ww <= W; x += lv.step) {
      const Rect win{x, y, ww, wh};
      const double norm = window_variance_norm(ii, sq, win);
      if (lv.cascade.first_rejecting_stage(ii.data(), detail::table_origin(ii, x, y), norm) < 0) {
        hits[j].push_back(win);
      }
    }
  };

  unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, jobs.size())));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) run(j);
      });
    }
  }

  std::vector<Rect> out;
  for (auto& h : hits) out.insert(out.end(), h.begin(), h.end());
  return out;
}

inline std::vector<Detection> detect_multiscale(const CascadeModel& model, const GrayImage& gray,
                                                const DetectOptions& opt = {}) {
  if (opt.min_neighbors < 0) throw Error(ErrorCode::InvalidArgument, "min_neighbors must be >= 0");
  const std::vector<Rect> raw = scan_windows(model, gray, opt);
  return group_rectangles(raw, opt.min_neighbors, opt.group_eps);
}

}  // namespace lumen

#endif  // LUMEN_DETECTOR_HPP
