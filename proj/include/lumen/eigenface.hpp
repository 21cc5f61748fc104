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

// Eigenface recognizer.
//
// Training centers the samples, eigendecomposes the n x n Gram matrix
// G = (1/n) A^T A (A holds the centered samples as columns) and lifts each
// eigenvector u to image space as v = A u / |A u|. The nonzero spectrum of G
// equals that of the covariance S = (1/n) A A^T, so the returned eigenvalues
// are the covariance eigenvalues. Recognition is nearest neighbour in the
// projected weight space with an absolute distance threshold.

#ifndef LUMEN_EIGENFACE_HPP
#define LUMEN_EIGENFACE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/image.hpp"
#include "lumen/linalg.hpp"
#include "lumen/pnm.hpp"

namespace lumen {

inline constexpr int kFaceSide = 64;
inline constexpr std::size_t kFaceDim = static_cast<std::size_t>(kFaceSide) * kFaceSide;

struct FaceSample {
  std::string label;
  std::vector<double> vector;
};

/// Canonical crop: bilinear resize to 64x64, then per-crop min-max scaling to
/// [0,1]. A flat crop maps to all zeros.
inline std::vector<double> face_vector(const GrayImage& crop) {
  const GrayImage small = resize_bilinear(crop, kFaceSide, kFaceSide);
  const auto px = small.pixels();
  const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
  std::vector<double> out(px.size(), 0.0);
  if (*hi == *lo) return out;
  const double range = static_cast<double>(*hi - *lo);
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = (px[i] - *lo) / range;
  return out;
}

inline std::vector<double> compute_mean(std::span<const std::vector<double>> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySet, "mean of an empty set");
  const std::size_t d = samples.front().size();
  std::vector<double> mean(d, 0.0);
  for (const auto& s : samples) {
    if (s.size() != d) throw Error(ErrorCode::LengthMismatch, "samples differ in length");
    for (std::size_t i = 0; i < d; ++i) mean[i] += s[i];
  }
  const double n = static_cast<double>(samples.size());
  for (double& m : mean) m /= n;
  return mean;
}

struct EigenModel {
  std::vector<double> mean;
  std::vector<double> eigenvalues;                     // descending
  std::vector<std::vector<double>> eigenvectors;       // orthonormal, length dim()
  std::vector<std::vector<double>> train_projections;  // n x k
  std::vector<std::string> train_labels;

  std::size_t dim() const noexcept { return mean.size(); }
  std::size_t k() const noexcept { return eigenvalues.size(); }
  std::size_t n() const noexcept { return train_labels.size(); }

  friend bool operator==(const EigenModel&, const EigenModel&) = default;
};

inline std::vector<double> project(const EigenModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    throw Error(ErrorCode::LengthMismatch, "probe has length " + std::to_string(x.size()) + ", model expects " +
                                               std::to_string(model.dim()));
  }
  std::vector<double> centered(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x[i] - model.mean[i];
  std::vector<double> w(model.k());
  for (std::size_t j = 0; j < model.k(); ++j) w[j] = dot(model.eigenvectors[j], centered);
  return w;
}

inline std::vector<double> reconstruct(const EigenModel& model, std::span<const double> weights) {
  if (weights.size() != model.k()) throw Error(ErrorCode::LengthMismatch, "expected k weights");
  std::vector<double> x = model.mean;
  for (std::size_t j = 0; j < model.k(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += weights[j] * model.eigenvectors[j][i];
  }
  return x;
}

/// Trains on `samples`; `k_requested` = 0 keeps every usable component.
inline EigenModel train(std::span<const FaceSample> samples, std::size_t k_requested = 0) {
  constexpr double kMinEigenvalue = 1e-10;
  if (samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least two samples");
  const std::size_t n = samples.size();

  std::vector<std::vector<double>> vectors;
  vectors.reserve(n);
  for (const auto& s : samples) vectors.push_back(s.vector);

  EigenModel model;
  model.mean = compute_mean(vectors);
  const std::size_t d = model.dim();
  if (d == 0) throw Error(ErrorCode::DegenerateData, "zero-length samples");
  for (auto& v : vectors) {
    for (std::size_t i = 0; i < d; ++i) v[i] -= model.mean[i];
  }

  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = dot(vectors[i], vectors[j]) / static_cast<double>(n);
  }
  const EigenDecomposition eig = eigen_decompose_symmetric(gram);

  const std::size_t limit = k_requested == 0 ? n : k_requested;
  for (std::size_t e = 0; e < eig.values.size() && model.k() < limit; ++e) {
    if (!(eig.values[e] > kMinEigenvalue)) break;
    std::vector<double> v(d, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double u = eig.vectors[e][j];
      for (std::size_t i = 0; i < d; ++i) v[i] += u * vectors[j][i];
    }
    const double len = norm2(v);
    for (double& x : v) x /= len;
    canonical_sign(v);
    model.eigenvalues.push_back(eig.values[e]);
    model.eigenvectors.push_back(std::move(v));
  }
  if (model.k() == 0) throw Error(ErrorCode::DegenerateData, "samples span no variance");

  for (const auto& s : samples) {
    model.train_projections.push_back(project(model, s.vector));
    model.train_labels.push_back(s.label);
  }
  return model;
}

struct RecognitionResult {
  std::optional<std::string> label;  // empty: unknown face
  double distance = 0.0;             // to the nearest training projection
  std::size_t nearest = 0;           // index of that training sample

  bool known() const noexcept { return label.has_value(); }
};

inline RecognitionResult recognize(const EigenModel& model, std::span<const double> probe, double threshold) {
  if (model.n() == 0) throw Error(ErrorCode::EmptySet, "model has no training projections");
  const std::vector<double> w = project(model, probe);
  RecognitionResult best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < model.n(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double diff = w[j] - model.train_projections[i][j];
      d2 += diff * diff;
    }
    const double d = std::sqrt(d2);
    if (d < best.distance) {
      best.distance = d;
      best.nearest = i;
    }
  }
  if (best.distance <= threshold) best.label = model.train_labels[best.nearest];
  return best;
}

/// Half the median pairwise distance between training projections.
inline double default_threshold(const EigenModel& model) {
  std::vector<double> dists;
  for (std::size_t i = 0; i < model.n(); ++i) {
    for (std::size_t j = i + 1; j < model.n(); ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < model.k(); ++c) {
        const double diff = model.train_projections[i][c] - model.train_projections[j][c];
        d2 += diff * diff;
      }
      dists.push_back(std::sqrt(d2));
    }
  }
  if (dists.empty()) return 0.0;
  std::sort(dists.begin(), dists.end());
  const std::size_t m = dists.size();
  const double median = m % 2 ? dists[m / 2] : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
  return 0.5 * median;
}

// Model file: "EIGF", u32 version = 1, u32 d, u32 k, u32 n, then f64 mean[d],
// f64 eigenvalues[k], f64 eigenvectors[k][d], f64 projections[n][k], and n
// labels as u32 byte length + UTF-8 bytes. All little-endian.

namespace detail {

inline constexpr std::uint32_t kModelVersion = 1;

class ByteWriter {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void raw(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  void need(std::size_t n, const char* what) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::TruncatedData, std::string("model ends inside ") + what);
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64(const char* what) {
    need(8, what);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::vector<double> f64s(std::size_t count, const char* what) {
    if (count > (in_.size() - pos_) / 8) throw Error(ErrorCode::TruncatedData, std::string("model ends inside ") + what);
    std::vector<double> out(count);
    for (double& v : out) v = f64(what);
    return out;
  }
  std::string str(std::size_t len, const char* what) {
    need(len, what);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), len);
    pos_ += len;
    return s;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Bytes save_model(const EigenModel& model) {
  detail::ByteWriter w;
  w.raw("EIGF");
  w.u32(detail::kModelVersion);
  w.u32(static_cast<std::uint32_t>(model.dim()));
  w.u32(static_cast<std::uint32_t>(model.k()));
  w.u32(static_cast<std::uint32_t>(model.n()));
  for (double v : model.mean) w.f64(v);
  for (double v : model.eigenvalues) w.f64(v);
  for (const auto& vec : model.eigenvectors) {
    for (double v : vec) w.f64(v);
  }
  for (const auto& proj : model.train_projections) {
    for (double v : proj) w.f64(v);
  }
  for (const auto& label : model.train_labels) {
    w.u32(static_cast<std::uint32_t>(label.size()));
    w.raw(label);
  }
  return w.take();
}

inline EigenModel load_model(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes);
  if (r.str(4, "magic") != "EIGF") throw Error(ErrorCode::BadMagic, "not an eigenface model");
  const std::uint32_t version = r.u32("version");
  if (version != detail::kModelVersion) {
    throw Error(ErrorCode::VersionUnsupported, "model version " + std::to_string(version));
  }
  const std::size_t d = r.u32("header");
  const std::size_t k = r.u32("header");
  const std::size_t n = r.u32("header");

  EigenModel m;
  m.mean = r.f64s(d, "mean");
  m.eigenvalues = r.f64s(k, "eigenvalues");
  for (std::size_t i = 0; i < k; ++i) m.eigenvectors.push_back(r.f64s(d, "eigenvectors"));
  for (std::size_t i = 0; i < n; ++i) m.train_projections.push_back(r.f64s(k, "projections"));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t len = r.u32("labels");
    m.train_labels.push_back(r.str(len, "labels"));
  }
  return m;
}

}  // namespace lumen

#endif  // LUMEN_EIGENFACE_HPP
