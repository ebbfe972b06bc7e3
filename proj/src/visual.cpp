// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/visual.hpp"

#include <json.hpp>
#include <string>

#include "tension/error.hpp"

namespace tension::visual {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kEmotionCount + 1> kNames = {
    "happiness", "surprise", "aversion", "contempt", "anger", "fear", "sadness", "nonexistent",
};

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::kSchema, where + ": missing '" + key + "'");
  }
  return obj.at(key);
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw Error(ErrorKind::kSchema, where + ": '" + key + "' is not a number");
  return v.get<double>();
}

std::int64_t require_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::kSchema, where + ": '" + key + "' is not an integer");
  }
  return v.get<std::int64_t>();
}

FaceObservation parse_face(const json& j, const std::string& where, int width, int height) {
  FaceObservation face;
  face.bbox = {require_number(j, "x", where), require_number(j, "y", where),
               require_number(j, "w", where), require_number(j, "h", where)};
  const BoundingBox& b = face.bbox;
  if (!(b.w > 0.0 && b.h > 0.0)) {
    throw Error(ErrorKind::kValidation, where + ": face box must have positive size");
  }
  if (b.x < 0.0 || b.y < 0.0 || b.x + b.w > width || b.y + b.h > height) {
    throw Error(ErrorKind::kValidation, where + ": face box lies outside the frame");
  }

  const json& margins = require(j, "margins", where);
  if (!margins.is_object()) throw Error(ErrorKind::kSchema, where + ": 'margins' is not an object");
  for (const auto& [key, value] : margins.items()) {
    const auto label = parse_emotion(key);
    if (!label || *label == EmotionLabel::kNonexistent) {
      throw Error(ErrorKind::kSchema, where + ": unknown emotion '" + key + "'");
    }
    if (!value.is_number()) {
      throw Error(ErrorKind::kSchema, where + ": margin '" + key + "' is not a number");
    }
  }
  for (EmotionLabel e : kEmotions) {
    face.margins[static_cast<std::size_t>(e)] =
        require_number(margins, std::string(to_string(e)).c_str(), where);
  }
  return face;
}

}  // namespace

std::string_view to_string(EmotionLabel label) { return kNames.at(static_cast<std::size_t>(label)); }

std::optional<EmotionLabel> parse_emotion(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<EmotionLabel>(i);
  }
  return std::nullopt;
}

VisualAnnotations load_visual_annotations(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("visual annotations: ") + e.what());
  }

  VisualAnnotations out;
  const std::int64_t width = require_integer(root, "frame_width", "document");
  const std::int64_t height = require_integer(root, "frame_height", "document");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kValidation, "frame dimensions must be positive");
  }
  out.frame_width = static_cast<int>(width);
  out.frame_height = static_cast<int>(height);

  const json& frames = require(root, "frames", "document");
  if (!frames.is_array()) throw Error(ErrorKind::kSchema, "document: 'frames' is not an array");
  out.frames.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string where = "frame #" + std::to_string(i);
    FrameAnnotation frame;
    frame.frame_index = require_integer(frames[i], "index", where);
    const std::string named = "frame " + std::to_string(frame.frame_index);
    if (frame.frame_index < 0) throw Error(ErrorKind::kValidation, named + ": negative index");
    if (!out.frames.empty() && frame.frame_index <= out.frames.back().frame_index) {
      throw Error(ErrorKind::kValidation, named + ": frame indices must strictly increase");
    }
    const json& faces = require(frames[i], "faces", named);
    if (!faces.is_array()) throw Error(ErrorKind::kSchema, named + ": 'faces' is not an array");
    for (const json& f : faces) {
      frame.faces.push_back(parse_face(f, named, out.frame_width, out.frame_height));
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

const FaceObservation* largest_face(const FrameAnnotation& frame) {
  const FaceObservation* best = nullptr;
  for (const auto& face : frame.faces) {
    if (best == nullptr) {
      best = &face;
      continue;
    }
    const double a = face.bbox.area();
    const double b = best->bbox.area();
    if (a > b || (a == b && (face.bbox.x < best->bbox.x ||
                             (face.bbox.x == best->bbox.x && face.bbox.y < best->bbox.y)))) {
      best = &face;
    }
  }
  return best;
}

double field_size(const FrameAnnotation& frame, int frame_width, int frame_height) {
  const FaceObservation* face = largest_face(frame);
  if (face == nullptr) return 0.0;
  return face->bbox.area() / (static_cast<double>(frame_width) * frame_height);
}

EmotionReading recognized_emotion(const FrameAnnotation& frame) {
  const FaceObservation* face = largest_face(frame);
  if (face == nullptr) return {};
  EmotionLabel winner = kEmotions.front();
  for (EmotionLabel e : kEmotions) {
    if (face->margin(e) > face->margin(winner)) winner = e;
  }
  return {winner, std::max(face->margin(winner), 0.0)};
}

std::vector<VisualFeatures> visual_features(const std::vector<FrameAnnotation>& frames,
                                            int frame_width, int frame_height) {
  std::vector<VisualFeatures> out;
  out.reserve(frames.size());
  for (const auto& frame : frames) {
    const EmotionReading reading = recognized_emotion(frame);
    const double size =
        reading.emotion == EmotionLabel::kNonexistent ? 0.0
                                                      : field_size(frame, frame_width, frame_height);
    out.push_back({frame.frame_index, reading.emotion, reading.intensity, size});
  }
  return out;
}

}  // namespace tension::visual
