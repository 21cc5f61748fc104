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

// Boosted Haar cascade model and a reader for the OpenCV "new-style" cascade
// XML (the layout written by opencv_traincascade).

#ifndef LUMEN_CASCADE_HPP
#define LUMEN_CASCADE_HPP

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "lumen/error.hpp"
#include "lumen/pnm.hpp"

namespace lumen {

/// One weighted rectangle of a Haar feature, in base-window pixels.
struct HaarRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  double weight = 0.0;
};

struct HaarFeature {
  std::vector<HaarRect> rects;  // 2 or 3

  /// Sum of weight * area; zero for a balanced feature.
  double weighted_area() const noexcept {
    double s = 0.0;
    for (const auto& r : rects) s += r.weight * static_cast<double>(r.w) * r.h;
    return s;
  }
  bool balanced() const noexcept { return std::abs(weighted_area()) <= 1e-6; }
};

struct WeakStump {
  std::size_t feature_index = 0;
  double threshold = 0.0;
  double left_val = 0.0;   // vote when feature < threshold * norm
  double right_val = 0.0;
};

struct CascadeStage {
  double stage_threshold = 0.0;
  std::vector<WeakStump> stumps;
};

struct CascadeModel {
  int window_w = 0;
  int window_h = 0;
  std::vector<CascadeStage> stages;
  std::vector<HaarFeature> features;
  /// Indices of features whose weighted areas do not cancel. Kept as a
  /// diagnostic; such features are still evaluated.
  std::vector<std::size_t> unbalanced_features;

  std::size_t stump_count() const noexcept {
    std::size_t n = 0;
    for (const auto& s : stages) n += s.stumps.size();
    return n;
  }
};

/// Checks structural invariants and refreshes `unbalanced_features`.
inline void validate_model(CascadeModel& model) {
  if (model.window_w < 1 || model.window_h < 1) {
    throw Error(ErrorCode::ParseError, "window size must be positive");
  }
  if (model.stages.empty()) throw Error(ErrorCode::ParseError, "cascade has no stages");
  model.unbalanced_features.clear();
  for (std::size_t i = 0; i < model.features.size(); ++i) {
    const auto& f = model.features[i];
    if (f.rects.size() < 2 || f.rects.size() > 3) {
      throw Error(ErrorCode::ParseError,
                  "feature " + std::to_string(i) + " has " + std::to_string(f.rects.size()) + " rects");
    }
    for (const auto& r : f.rects) {
      if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > model.window_w ||
          r.y + r.h > model.window_h) {
        throw Error(ErrorCode::ParseError,
                    "feature " + std::to_string(i) + " rect lies outside the base window");
      }
    }
    if (!f.balanced()) model.unbalanced_features.push_back(i);
  }
  for (std::size_t s = 0; s < model.stages.size(); ++s) {
    if (model.stages[s].stumps.empty()) {
      throw Error(ErrorCode::ParseError, "stage " + std::to_string(s) + " has no weak classifiers");
    }
    for (const auto& stump : model.stages[s].stumps) {
      if (stump.feature_index >= model.features.size()) {
        throw Error(ErrorCode::ParseError, "stage " + std::to_string(s) + " references feature " +
                                               std::to_string(stump.feature_index) + " of " +
                                               std::to_string(model.features.size()));
      }
    }
  }
}

namespace detail {

using boost::property_tree::ptree;

// strtod honours the C locale; cascade files always use '.' decimals.
inline std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  const char* p = text.c_str();
  while (true) {
    while (*p == ' ' || *p == '\t' || *p == '\n' || *p == '\r') ++p;
    if (*p == '\0') break;
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p || !std::isfinite(v)) {
      throw Error(ErrorCode::ParseError, std::string("bad number in <") + what + ">: " + text);
    }
    out.push_back(v);
    p = end;
  }
  return out;
}

inline const ptree& child(const ptree& node, const char* name) {
  auto it = node.find(name);
  if (it == node.not_found()) throw Error(ErrorCode::ParseError, std::string("missing <") + name + ">");
  return it->second;
}

inline std::string text_of(const ptree& node, const char* name) {
  std::string s = child(node, name).get_value<std::string>();
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double number_of(const ptree& node, const char* name) {
  const auto nums = parse_numbers(text_of(node, name), name);
  if (nums.size() != 1) throw Error(ErrorCode::ParseError, std::string("<") + name + "> must hold one number");
  return nums.front();
}

inline int int_of(const ptree& node, const char* name) {
  const double v = number_of(node, name);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorCode::ParseError, std::string("<") + name + "> must be an integer");
  }
  return static_cast<int>(v);
}

// Children named "_" in document order; attributes and other tags are skipped.
template <typename Fn>
void for_each_item(const ptree& node, Fn&& fn) {
  for (const auto& [key, sub] : node) {
    if (key == "_") fn(sub);
  }
}

inline int checked_int(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace detail

inline CascadeModel parse_cascade_xml(std::string_view text) {
  namespace pt = boost::property_tree;
  using detail::ptree;

  ptree doc;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, doc, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed XML: ") + e.what());
  }

  const ptree& root = detail::child(doc, "opencv_storage");
  const ptree& cascade = detail::child(root, "cascade");

  const std::string stage_type = detail::text_of(cascade, "stageType");
  if (stage_type != "BOOST") {
    throw Error(ErrorCode::UnsupportedCascade, "stageType " + stage_type + " (only BOOST)");
  }
  const std::string feature_type = detail::text_of(cascade, "featureType");
  if (feature_type != "HAAR") {
    throw Error(ErrorCode::UnsupportedCascade, "featureType " + feature_type + " (only HAAR)");
  }

  CascadeModel model;
  model.window_h = detail::int_of(cascade, "height");
  model.window_w = detail::int_of(cascade, "width");

  detail::for_each_item(detail::child(cascade, "stages"), [&](const ptree& stage_node) {
    CascadeStage stage;
    stage.stage_threshold = detail::number_of(stage_node, "stageThreshold");
    detail::for_each_item(detail::child(stage_node, "weakClassifiers"), [&](const ptree& weak) {
      const auto nodes = detail::parse_numbers(detail::text_of(weak, "internalNodes"), "internalNodes");
      const auto leaves = detail::parse_numbers(detail::text_of(weak, "leafValues"), "leafValues");
      // a stump is exactly one split "left right featureIdx threshold" with
      // both children leaves (0 and -1) and two leaf values
      if (nodes.size() != 4 || leaves.size() != 2) {
        throw Error(ErrorCode::UnsupportedCascade, "only single-split stumps are supported");
      }
      if (nodes[0] != 0.0 || nodes[1] != -1.0) {
        throw Error(ErrorCode::UnsupportedCascade, "weak classifier is a tree, not a stump");
      }
      const int feature = detail::checked_int(nodes[2], "feature index");
      if (feature < 0) throw Error(ErrorCode::ParseError, "negative feature index");
      stage.stumps.push_back({static_cast<std::size_t>(feature), nodes[3], leaves[0], leaves[1]});
    });
    if (stage_node.find("maxWeakCount") != stage_node.not_found()) {
      const int declared = detail::int_of(stage_node, "maxWeakCount");
      if (declared != static_cast<int>(stage.stumps.size())) {
        throw Error(ErrorCode::ParseError, "maxWeakCount disagrees with weakClassifiers");
      }
    }
    model.stages.push_back(std::move(stage));
  });

  if (cascade.find("stageNum") != cascade.not_found()) {
    const int declared = detail::int_of(cascade, "stageNum");
    if (declared != static_cast<int>(model.stages.size())) {
      throw Error(ErrorCode::ParseError, "stageNum " + std::to_string(declared) + " but " +
                                             std::to_string(model.stages.size()) + " stages found");
    }
  }

  detail::for_each_item(detail::child(cascade, "features"), [&](const ptree& feature_node) {
    if (auto tilted = feature_node.get_optional<std::string>("tilted")) {
      const auto flag = detail::parse_numbers(*tilted, "tilted");
      if (flag.size() != 1) throw Error(ErrorCode::ParseError, "<tilted> must hold one number");
      if (flag.front() != 0.0) throw Error(ErrorCode::UnsupportedCascade, "tilted Haar features are not supported");
    }
    HaarFeature feature;
    detail::for_each_item(detail::child(feature_node, "rects"), [&](const ptree& rect_node) {
      const auto v = detail::parse_numbers(rect_node.get_value<std::string>(), "rects");
      if (v.size() != 5) throw Error(ErrorCode::ParseError, "rect must be \"x y w h weight\"");
      feature.rects.push_back({detail::checked_int(v[0], "rect x"), detail::checked_int(v[1], "rect y"),
                               detail::checked_int(v[2], "rect w"), detail::checked_int(v[3], "rect h"),
                               v[4]});
    });
    model.features.push_back(std::move(feature));
  });

  validate_model(model);
  return model;
}

inline CascadeModel load_cascade_file(const std::filesystem::path& path) {
  const Bytes raw = read_file(path);
  return parse_cascade_xml(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

}  // namespace lumen

#endif  // LUMEN_CASCADE_HPP
