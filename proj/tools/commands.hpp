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

// Subcommand implementations for the `lumen` tool. Each command writes its
// machine-readable result to `out`, diagnostics to `err`, and returns the
// process exit status:
//   0 success, 2 input/parse failure, 3 invalid dimensions, 4 degenerate data.

#ifndef LUMEN_TOOLS_COMMANDS_HPP
#define LUMEN_TOOLS_COMMANDS_HPP

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "lumen/cascade.hpp"
#include "lumen/detector.hpp"
#include "lumen/eigenface.hpp"
#include "lumen/error.hpp"
#include "lumen/image.hpp"
#include "lumen/pnm.hpp"
#include "lumen/tracker.hpp"

namespace lumen::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDimension = 3;
inline constexpr int kExitDegenerate = 4;

inline int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ImageTooSmall:
    case ErrorCode::InvalidSize:
      return kExitDimension;
    case ErrorCode::DegenerateData:
      return kExitDegenerate;
    default:
      return kExitInput;
  }
}

// Runs `body`, translating library errors into exit codes and diagnostics.
template <typename Body>
int guarded(std::ostream& err, const char* command, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "lumen " << command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "lumen " << command << ": ParseError: " << e.what() << "\n";
    return kExitInput;
  }
}

inline std::string format_real(double v, const char* fmt = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline void draw_outline(RgbImage& img, const Rect& r, Rgb color) {
  const int x1 = std::min(r.x + r.w - 1, img.width() - 1);
  const int y1 = std::min(r.y + r.h - 1, img.height() - 1);
  for (int x = std::max(r.x, 0); x <= x1; ++x) {
    if (r.y >= 0) img.at(x, r.y) = color;
    img.at(x, y1) = color;
  }
  for (int y = std::max(r.y, 0); y <= y1; ++y) {
    if (r.x >= 0) img.at(r.x, y) = color;
    img.at(x1, y) = color;
  }
}

inline ojson detections_json(const std::vector<Detection>& dets) {
  ojson arr = ojson::array();
  for (const auto& d : dets) {
    arr.push_back({{"x", d.x}, {"y", d.y}, {"w", d.w}, {"h", d.h}, {"neighbors", d.neighbors}});
  }
  return arr;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  fs::path cascade;
  fs::path image;
  DetectOptions options;
  std::optional<fs::path> out;  // annotated PPM
};

inline int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "detect", [&] {
    const CascadeModel model = load_cascade_file(args.cascade);
    if (!model.unbalanced_features.empty()) {
      err << "lumen detect: warning: " << model.unbalanced_features.size() << " unbalanced Haar features\n";
    }
    const AnyImage img = load_pnm_file(args.image);
    const auto dets = detect_multiscale(model, to_gray(img), args.options);
    out << detections_json(dets).dump() << "\n";
    if (args.out) {
      RgbImage canvas = to_rgb(img);
      for (const auto& d : dets) draw_outline(canvas, d.rect(), Rgb{255, 0, 0});
      write_file(*args.out, save_pnm(canvas));
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------- train

struct ManifestRow {
  std::string label;
  fs::path path;
};

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

/// `label,path` lines; relative paths resolve against the manifest's folder.
/// Blank lines and a literal `label,path` header are skipped.
inline std::vector<ManifestRow> read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + manifest.string());
  std::vector<ManifestRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line == "label,path") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, manifest.string() + ":" + std::to_string(lineno) + ": expected label,path");
    }
    ManifestRow row{trim(line.substr(0, comma)), fs::path(trim(line.substr(comma + 1)))};
    if (row.path.is_relative()) row.path = manifest.parent_path() / row.path;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct TrainArgs {
  fs::path manifest;
  std::size_t k = 0;  // 0: keep all usable components
  fs::path model;
};

inline int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "train", [&] {
    std::vector<FaceSample> samples;
    for (const auto& row : read_manifest(args.manifest)) {
      samples.push_back({row.label, face_vector(to_gray(load_pnm_file(row.path)))});
    }
    const EigenModel model = train(samples, args.k);
    write_file(args.model, save_model(model));

    // trace of the covariance = total variance
    double total = 0.0;
    for (const auto& s : samples) {
      for (std::size_t i = 0; i < s.vector.size(); ++i) {
        const double c = s.vector[i] - model.mean[i];
        total += c * c;
      }
    }
    total /= static_cast<double>(samples.size());
    double kept = 0.0;
    for (double l : model.eigenvalues) kept += l;

    ojson report = {{"n", model.n()},
                    {"d", model.dim()},
                    {"k", model.k()},
                    {"eigenvalue_mass", total > 0.0 ? kept / total : 0.0}};
    out << report.dump() << "\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------- recognize

struct RecognizeArgs {
  fs::path model;
  fs::path image;
  std::optional<double> threshold;  // default: half the median training distance
};

inline int cmd_recognize(const RecognizeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "recognize", [&] {
    const EigenModel model = load_model(read_file(args.model));
    const auto probe = face_vector(to_gray(load_pnm_file(args.image)));
    const double threshold = args.threshold.value_or(default_threshold(model));
    const RecognitionResult r = recognize(model, probe, threshold);
    ojson result;
    if (r.label) {
      result["label"] = *r.label;
    } else {
      result["label"] = nullptr;
    }
    result["distance"] = r.distance;
    out << result.dump() << "\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------- track

struct TrackArgs {
  fs::path frames;
  std::optional<Rect> seed;
  std::optional<fs::path> cascade;  // auto-seed from the largest face
  DetectOptions detect;
  double sigma = 2.0;
  std::optional<long long> min_area;  // default: 0.1% of the frame
  ThresholdMargin margin;
};

inline bool is_pnm_name(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

/// PNM files of `dir` ordered by the first number in the file name, then by name.
inline std::vector<fs::path> numbered_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  struct Entry {
    long long number;
    std::string name;
    fs::path path;
  };
  std::vector<Entry> entries;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || !is_pnm_name(e.path())) continue;
    const std::string name = e.path().filename().string();
    long long number = -1;
    const auto digit = std::find_if(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); });
    if (digit != name.end()) {
      number = 0;
      for (auto it = digit; it != name.end() && std::isdigit(static_cast<unsigned char>(*it)); ++it) {
        number = number * 10 + (*it - '0');
      }
    }
    entries.push_back({number, name, e.path()});
  }
  if (entries.empty()) throw Error(ErrorCode::IoError, "no PNM frames in " + dir.string());
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.number, a.name) < std::tie(b.number, b.name); });
  std::vector<fs::path> out;
  for (auto& e : entries) out.push_back(std::move(e.path));
  return out;
}

inline std::optional<Rect> largest_detection(const CascadeModel& model, const RgbImage& frame,
                                             const DetectOptions& opt) {
  const auto dets = detect_multiscale(model, rgb_to_gray(frame), opt);
  std::optional<Rect> best;
  for (const auto& d : dets) {
    if (!best || d.rect().area() > best->area()) best = d.rect();
  }
  return best;
}

inline int cmd_track(const TrackArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "track", [&] {
    const auto paths = numbered_frames(args.frames);
    std::optional<CascadeModel> model;
    if (args.cascade) model = load_cascade_file(*args.cascade);
    if (!args.seed && !model) {
      err << "lumen track: need --seed-rect or --cascade\n";
      return kExitInput;
    }

    auto threshold_from = [&](const RgbImage& frame, const Rect& seed) {
      return sample_threshold(rgb_to_hsv(normalize_rgb(frame)), seed, args.margin);
    };

    std::optional<HsvThreshold> threshold;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const RgbImage frame = to_rgb(load_pnm_file(paths[i]));
      const long long min_area = args.min_area.value_or(default_min_area(frame.width(), frame.height()));

      if (i == 0) {
        std::optional<Rect> seed = args.seed;
        if (!seed) seed = largest_detection(*model, frame, args.detect);
        if (!seed) {
          err << "lumen track: no face found on frame 0 to seed from\n";
          return kExitInput;
        }
        threshold = threshold_from(frame, *seed);
      }

      TrackState state = track_step(frame, *threshold, args.sigma, min_area);
      if (!state.locked && model) {
        if (auto seed = largest_detection(*model, frame, args.detect)) {
          try {
            threshold = threshold_from(frame, *seed);
            state = track_step(frame, *threshold, args.sigma, min_area);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::AchromaticSeed) throw;
          }
        }
      }

      ojson line = {{"frame", i}, {"locked", state.locked}};
      if (state.locked) {
        line["cx"] = state.cx;
        line["cy"] = state.cy;
        line["bbox"] = {state.bbox.x, state.bbox.y, state.bbox.w, state.bbox.h};
      } else {
        line["cx"] = nullptr;
        line["cy"] = nullptr;
        line["bbox"] = nullptr;
      }
      out << line.dump() << "\n";
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------- eval

struct Annotation {
  fs::path image_path;
  std::vector<Rect> boxes;
  std::vector<std::string> labels;
};

/// JSON-lines: {"image": path, "boxes": [[x,y,w,h], ...], "labels": [...]}.
inline std::vector<Annotation> read_annotations(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::IoError, "cannot open annotations " + file.string());
  std::vector<Annotation> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line);
    Annotation a;
    a.image_path = fs::path(j.at("image").get<std::string>());
    if (a.image_path.is_relative()) a.image_path = file.parent_path() / a.image_path;
    for (const auto& b : j.at("boxes")) {
      if (!b.is_array() || b.size() != 4) {
        throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(lineno) + ": box must be [x,y,w,h]");
      }
      a.boxes.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()});
    }
    if (j.contains("labels")) a.labels = j.at("labels").get<std::vector<std::string>>();
    rows.push_back(std::move(a));
  }
  return rows;
}

struct EvalArgs {
  fs::path cascade;
  fs::path annotations;
  std::vector<double> gains;
  double min_iou = 0.5;
  DetectOptions options;
};

struct EvalRow {
  double gain = 0.0;
  int trials = 0;
  int detected = 0;
  double rate = 0.0;
  double mean_iou = 0.0;  // mean over trials of the best detection/ground-truth IoU
};

inline std::vector<EvalRow> run_eval(const CascadeModel& model, const std::vector<Annotation>& annotations,
                                     const std::vector<RgbImage>& images, const EvalArgs& args) {
  std::vector<EvalRow> rows;
  for (double gain : args.gains) {
    EvalRow row;
    row.gain = gain;
    double iou_sum = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto dets = detect_multiscale(model, rgb_to_gray(adjust_brightness(images[i], gain)), args.options);
      double best = 0.0;
      for (const auto& d : dets) {
        for (const auto& gt : annotations[i].boxes) best = std::max(best, iou(d.rect(), gt));
      }
      ++row.trials;
      if (best >= args.min_iou && !dets.empty()) ++row.detected;
      iou_sum += best;
    }
    row.rate = row.trials ? static_cast<double>(row.detected) / row.trials : 0.0;
    row.mean_iou = row.trials ? iou_sum / row.trials : 0.0;
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_gain(double g) { return format_real(g, "%g"); }

inline int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "eval", [&] {
    for (double g : args.gains) {
      if (!(g >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gains must be >= 0");
    }
    const CascadeModel model = load_cascade_file(args.cascade);
    const auto annotations = read_annotations(args.annotations);
    std::vector<RgbImage> images;
    for (const auto& a : annotations) {
      images.push_back(to_rgb(load_pnm_file(a.image_path)));
      for (const auto& b : a.boxes) {
        if (!images.back().contains(b)) {
          throw Error(ErrorCode::ParseError, "annotation box outside " + a.image_path.string());
        }
      }
    }
    const auto rows = run_eval(model, annotations, images, args);
    out << "gain,trials,detected,rate,mean_iou\n";
    for (const auto& r : rows) {
      out << format_gain(r.gain) << "," << r.trials << "," << r.detected << "," << format_real(r.rate) << ","
          << format_real(r.mean_iou) << "\n";
    }
    return kExitOk;
  });
}

}  // namespace lumen::cli

#endif  // LUMEN_TOOLS_COMMANDS_HPP
