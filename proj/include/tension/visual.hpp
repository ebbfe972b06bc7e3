// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_VISUAL_HPP
#define TENSION_VISUAL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace tension::visual {

// Declaration order is the tie-break order for equal margins.
enum class EmotionLabel : std::uint8_t {
  kHappiness,
  kSurprise,
  kAversion,
  kContempt,
  kAnger,
  kFear,
  kSadness,
  kNonexistent,
};

inline constexpr std::size_t kEmotionCount = 7;

inline constexpr std::array<EmotionLabel, kEmotionCount> kEmotions = {
    EmotionLabel::kHappiness, EmotionLabel::kSurprise, EmotionLabel::kAversion,
    EmotionLabel::kContempt,  EmotionLabel::kAnger,    EmotionLabel::kFear,
    EmotionLabel::kSadness,
};

std::string_view to_string(EmotionLabel label);
std::optional<EmotionLabel> parse_emotion(std::string_view name);

struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
};

/// One detected face and the one-vs-all classifier decision values for it.
struct FaceObservation {
  BoundingBox bbox;
  std::array<double, kEmotionCount> margins{};

  double margin(EmotionLabel label) const { return margins.at(static_cast<std::size_t>(label)); }
};

struct FrameAnnotation {
  std::int64_t frame_index = 0;
  std::vector<FaceObservation> faces;
};

struct VisualAnnotations {
  int frame_width = 0;
  int frame_height = 0;
  std::vector<FrameAnnotation> frames;
};

struct EmotionReading {
  EmotionLabel emotion = EmotionLabel::kNonexistent;
  double intensity = 0.0;
};

struct VisualFeatures {
  std::int64_t frame_index = 0;
  EmotionLabel emotion = EmotionLabel::kNonexistent;
  double intensity = 0.0;
  double field_size = 0.0;
};

/// Parses the JSON annotation document:
///   {"frame_width", "frame_height", "frames": [{"index", "faces": [
///     {"x", "y", "w", "h", "margins": {<seven emotions>}}]}]}
///
/// Throws Error(kParse) for invalid JSON, Error(kSchema) for missing or
/// mistyped fields (including any of the seven margins), and
/// Error(kValidation) for boxes outside the frame, non-positive sizes or
/// non-increasing frame indices.
VisualAnnotations load_visual_annotations(std::string_view document);

/// The face with the largest box; equal areas go to the lowest x, then y.
const FaceObservation* largest_face(const FrameAnnotation& frame);

/// Area of the largest face over the frame area; 0 without faces.
double field_size(const FrameAnnotation& frame, int frame_width, int frame_height);

/// Argmax emotion of the largest face, intensity = max(margin, 0).
/// A frame without faces reads as (nonexistent, 0).
EmotionReading recognized_emotion(const FrameAnnotation& frame);

std::vector<VisualFeatures> visual_features(const std::vector<FrameAnnotation>& frames,
                                            int frame_width, int frame_height);

}  // namespace tension::visual

#endif  // TENSION_VISUAL_HPP
