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

#ifndef LUMEN_TOOLS_CLI_HPP
#define LUMEN_TOOLS_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

#ifndef LUMEN_DEFAULT_CASCADE_DIR
#define LUMEN_DEFAULT_CASCADE_DIR "data/cascades"
#endif

namespace lumen::cli {

inline constexpr const char* kFaceCascade = "haarcascade_frontalface_default.xml";
inline constexpr const char* kUpperBodyCascade = "haarcascade_upperbody.xml";

inline fs::path cascade_dir() {
  if (const char* env = std::getenv("LUMEN_CASCADE_DIR"); env && *env) return env;
  return LUMEN_DEFAULT_CASCADE_DIR;
}

/// An explicit path wins; a bare name that does not exist locally is looked
/// up in the cascade directory.
inline fs::path resolve_cascade(const std::string& given, const char* fallback) {
  if (given.empty()) return cascade_dir() / fallback;
  fs::path p(given);
  if (!fs::exists(p) && p.is_relative() && !p.has_parent_path() && fs::exists(cascade_dir() / p)) {
    return cascade_dir() / p;
  }
  return p;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

inline double parse_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw CLI::ValidationError(what, "not a number: '" + s + "'");
  return v;
}

inline Rect parse_rect(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 4) throw CLI::ValidationError("--seed-rect", "expected x,y,w,h");
  int v[4];
  for (int i = 0; i < 4; ++i) {
    const double d = parse_double(parts[static_cast<std::size_t>(i)], "--seed-rect");
    if (d != static_cast<int>(d)) throw CLI::ValidationError("--seed-rect", "coordinates must be integers");
    v[i] = static_cast<int>(d);
  }
  return {v[0], v[1], v[2], v[3]};
}

/// Parses `argv` and dispatches to a subcommand. Flags take precedence over
/// LUMEN_* environment variables, which take precedence over defaults.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical face perception: Haar detection, eigenface recognition, HSV tracking", "lumen"};
  app.require_subcommand(1);

  DetectOptions detect;
  unsigned threads = 0;
  auto add_detect_flags = [&](CLI::App* cmd) {
    cmd->add_option("--scale-factor", detect.scale_factor, "Window growth per pyramid level (> 1)")
        ->envname("LUMEN_SCALE_FACTOR")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-neighbors", detect.min_neighbors, "Hits a group needs beyond this count")
        ->envname("LUMEN_MIN_NEIGHBORS")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--min-size", detect.min_size, "Smallest window side in pixels (0: model window)")
        ->envname("LUMEN_MIN_SIZE")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", threads, "Worker threads (0: all cores)")->envname("LUMEN_THREADS");
  };

  std::string cascade;
  std::string image;
  std::string out_path;

  auto* detect_cmd = app.add_subcommand("detect", "Detect faces; prints a JSON array of boxes");
  auto* upper_cmd = app.add_subcommand("detect-upperbody", "Detect upper bodies; prints a JSON array of boxes");
  for (auto* cmd : {detect_cmd, upper_cmd}) {
    cmd->add_option("--cascade", cascade, "Cascade XML (default: from LUMEN_CASCADE_DIR)");
    cmd->add_option("--image", image, "Input PGM/PPM")->required();
    cmd->add_option("--out", out_path, "Write an annotated PPM here");
    add_detect_flags(cmd);
  }

  std::string manifest;
  std::size_t k = 0;
  std::string model_path;
  auto* train_cmd = app.add_subcommand("train", "Train an eigenface model from a label,path manifest");
  train_cmd->add_option("--manifest", manifest, "CSV of label,path")->required();
  train_cmd->add_option("--k", k, "Components to keep (0: all)")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--model", model_path, "Output model file")->required();

  std::optional<double> threshold;
  auto* recognize_cmd = app.add_subcommand("recognize", "Recognize a face crop against a model");
  recognize_cmd->add_option("--model", model_path, "Model file")->required();
  recognize_cmd->add_option("--image", image, "Probe PGM/PPM")->required();
  recognize_cmd->add_option("--threshold", threshold, "Distance threshold (default: half the median)");

  std::string frames;
  std::string seed_rect;
  double sigma = 2.0;
  long long min_area = -1;
  auto* track_cmd = app.add_subcommand("track", "Track a colored target across numbered PNM frames");
  track_cmd->add_option("--frames", frames, "Directory of numbered frames")->required();
  track_cmd->add_option("--seed-rect", seed_rect, "Seed region x,y,w,h on frame 0");
  track_cmd->add_option("--cascade", cascade, "Cascade for auto-seeding and re-detection");
  track_cmd->add_option("--sigma", sigma, "Mask smoothing sigma")->envname("LUMEN_SIGMA")->check(CLI::PositiveNumber);
  track_cmd->add_option("--min-area", min_area, "Smallest blob to lock on (default 0.1% of frame)")
      ->envname("LUMEN_MIN_AREA");
  add_detect_flags(track_cmd);

  std::string annotations;
  std::string gains = "0,0.25,0.5,1,2,4";
  double min_iou = 0.5;
  auto* eval_cmd = app.add_subcommand("eval", "Detection rate across a brightness sweep; prints CSV");
  eval_cmd->add_option("--cascade", cascade, "Cascade XML (default: from LUMEN_CASCADE_DIR)");
  eval_cmd->add_option("--annotations", annotations, "JSON-lines annotation file")->required();
  eval_cmd->add_option("--gains", gains, "Comma-separated brightness gains");
  eval_cmd->add_option("--min-iou", min_iou, "IoU needed to count a hit")->envname("LUMEN_MIN_IOU");
  add_detect_flags(eval_cmd);

  try {
    app.parse(argc, argv);
    detect.threads = threads;
    if (detect.scale_factor <= 1.0) throw CLI::ValidationError("--scale-factor", "must be > 1");

    if (app.got_subcommand(detect_cmd) || app.got_subcommand(upper_cmd)) {
      DetectArgs args;
      args.cascade = resolve_cascade(cascade, app.got_subcommand(upper_cmd) ? kUpperBodyCascade : kFaceCascade);
      args.image = image;
      args.options = detect;
      if (!out_path.empty()) args.out = fs::path(out_path);
      return cmd_detect(args, out, err);
    }
    if (app.got_subcommand(train_cmd)) return cmd_train({manifest, k, model_path}, out, err);
    if (app.got_subcommand(recognize_cmd)) return cmd_recognize({model_path, image, threshold}, out, err);
    if (app.got_subcommand(track_cmd)) {
      TrackArgs args;
      args.frames = frames;
      if (!seed_rect.empty()) args.seed = parse_rect(seed_rect);
      if (!cascade.empty()) args.cascade = resolve_cascade(cascade, kFaceCascade);
      args.detect = detect;
      args.sigma = sigma;
      if (min_area >= 0) args.min_area = min_area;
      return cmd_track(args, out, err);
    }
    EvalArgs args;
    args.cascade = resolve_cascade(cascade, kFaceCascade);
    args.annotations = annotations;
    for (const auto& g : split_commas(gains)) args.gains.push_back(parse_double(g, "--gains"));
    args.min_iou = min_iou;
    args.options = detect;
    return cmd_eval(args, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
}

}  // namespace lumen::cli

#endif  // LUMEN_TOOLS_CLI_HPP
