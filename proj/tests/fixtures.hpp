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

// Shared test fixtures: hand-built cascade XML and on-disk fixture paths.

#ifndef LUMEN_TESTS_FIXTURES_HPP
#define LUMEN_TESTS_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "lumen/image.hpp"

namespace fixture {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return LUMEN_FIXTURE_DIR; }
inline fs::path cascade_dir() { return LUMEN_CASCADE_DIR; }
inline fs::path frontal_face() { return cascade_dir() / "haarcascade_frontalface_default.xml"; }
inline fs::path upper_body() { return cascade_dir() / "haarcascade_upperbody.xml"; }
inline fs::path portraits() { return fixture_dir() / "portraits"; }
inline fs::path annotations() { return portraits() / "annotations.jsonl"; }

struct Stump {
  int feature;
  double threshold;
  double left;
  double right;
};

struct Stage {
  double threshold;
  std::vector<Stump> stumps;
};

struct Feature {
  std::vector<std::string> rects;  // "x y w h weight"
  int tilted = 0;
  bool write_tilted = false;
};

struct CascadeSpec {
  int width = 4;
  int height = 4;
  std::string feature_type = "HAAR";
  std::vector<Stage> stages;
  std::vector<Feature> features;
};

inline std::string to_xml(const CascadeSpec& spec) {
  std::ostringstream x;
  x.precision(17);
  x << "<?xml version=\"1.0\"?>\n<opencv_storage>\n<cascade type_id=\"opencv-cascade-classifier\">"
    << "<stageType>BOOST</stageType>\n  <featureType>" << spec.feature_type << "</featureType>\n"
    << "  <height>" << spec.height << "</height>\n  <width>" << spec.width << "</width>\n"
    << "  <stageParams>\n    <maxWeakCount>1</maxWeakCount></stageParams>\n"
    << "  <featureParams>\n    <maxCatCount>0</maxCatCount></featureParams>\n"
    << "  <stageNum>" << spec.stages.size() << "</stageNum>\n  <stages>\n";
  for (const auto& st : spec.stages) {
    x << "    <_>\n      <maxWeakCount>" << st.stumps.size() << "</maxWeakCount>\n"
      << "      <stageThreshold>" << st.threshold << "</stageThreshold>\n      <weakClassifiers>\n";
    for (const auto& s : st.stumps) {
      x << "        <_>\n          <internalNodes>\n            0 -1 " << s.feature << " " << s.threshold
        << "</internalNodes>\n          <leafValues>\n            " << s.left << " " << s.right
        << "</leafValues></_>\n";
    }
    x << "      </weakClassifiers></_>\n";
  }
  x << "  </stages>\n  <features>\n";
  for (const auto& f : spec.features) {
    x << "    <_>\n      <rects>\n";
    for (const auto& r : f.rects) x << "        <_>\n          " << r << "</_>\n";
    x << "      </rects>\n";
    if (f.write_tilted) x << "      <tilted>" << f.tilted << "</tilted>\n";
    x << "    </_>\n";
  }
  x << "  </features></cascade>\n</opencv_storage>\n";
  return x.str();
}

/// One stage, one stump over the two-rect feature {(0,0,2,4,-1), (0,0,1,4,+2)}
/// in a 4x4 window.
inline CascadeSpec single_stump(double stage_threshold, double stump_threshold = 0.0, double left = 1.0,
                                double right = -1.0) {
  CascadeSpec spec;
  spec.stages = {{stage_threshold, {{0, stump_threshold, left, right}}}};
  spec.features = {{{"0 0 2 4 -1.", "0 0 1 4 2."}}};
  return spec;
}

/// Left half 255, right half 0.
inline lumen::GrayImage half_white(int w = 4, int h = 4) {
  lumen::GrayImage img(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w / 2; ++x) img.at(x, y) = 255;
  }
  return img;
}

}  // namespace fixture

#endif  // LUMEN_TESTS_FIXTURES_HPP
