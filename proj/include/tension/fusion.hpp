// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_FUSION_HPP
#define TENSION_FUSION_HPP

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tension/caption.hpp"
#include "tension/prosody.hpp"
#include "tension/sentiment.hpp"
#include "tension/visual.hpp"

namespace tension::fusion {

enum class TensionLevel { kLow, kHigh };

std::string_view to_string(TensionLevel level);
/// Accepts "low" / "high", case-insensitively.
std::optional<TensionLevel> parse_level(std::string_view text);

enum class LoudnessNormalization {
  kPerVideoMinMax,  // min-max of the video's own loudness track
  kAbsolute,        // fixed [-96, 0] dBFS range
};

std::string_view to_string(LoudnessNormalization mode);
std::optional<LoudnessNormalization> parse_normalization(std::string_view text);

using EmotionMap = std::map<visual::EmotionLabel, TensionLevel>;

/// happiness -> Low; surprise, aversion, contempt, anger, fear, sadness -> High.
EmotionMap default_emotion_map();

struct FusionConfig {
  EmotionMap emotion_map = default_emotion_map();
  double weight_floor = 0.1;
  LoudnessNormalization loudness_normalization = LoudnessNormalization::kPerVideoMinMax;
  TensionLevel tie_break = TensionLevel::kLow;
  // Audio context taken around each video frame's timestamp, seconds.
  double frame_half_window = 0.005;

  /// Throws Error(kConfiguration) for an incomplete map or out-of-range values.
  void validate() const;
};

struct TensionScores {
  double low = 0.0;
  double high = 0.0;

  double& operator[](TensionLevel level) { return level == TensionLevel::kLow ? low : high; }
  double operator[](TensionLevel level) const { return level == TensionLevel::kLow ? low : high; }
};

struct VideoFeatures {
  std::vector<visual::VisualFeatures> visual;
  double fps = 25.0;
  std::vector<prosody::ProsodyFrame> prosody;
  std::vector<sentiment::ScoredSentence> sentiments;
};

/// Maps loudness in dBFS to [0, 1].
struct LoudnessRange {
  double min_db = prosody::kLoudnessFloorDb;
  double max_db = 0.0;

  /// A degenerate range (max == min) maps every frame to 1.
  double normalize(double db) const;
};

LoudnessRange loudness_range(std::span<const prosody::ProsodyFrame> prosody,
                             LoudnessNormalization mode);

/// w = floor + (1 - floor) * mean(voicing * normalised loudness) over the
/// frames whose centre lies in [span.start, span.end]; no frames -> floor.
double audio_weight(std::span<const prosody::ProsodyFrame> prosody, caption::TimeSpan span,
                    const LoudnessRange& range, const FusionConfig& config);

/// Per-modality sub-totals. total is visual + sentiment, bin by bin.
struct TensionBreakdown {
  TensionScores visual;
  TensionScores sentiment;
  TensionScores total;
};

/// Sums weighted evidence into the Low/High bins in time order:
///  - each frame with a face adds intensity * field size * audio weight of
///    the surrounding +-frame_half_window to the bin of its emotion;
///  - each sentence with a non-zero sum s adds |s| * audio weight of its
///    span to High when s < 0 and to Low when s > 0.
///
/// `range` fixes the loudness normalisation; when absent it is computed from
/// features.prosody. Throws Error(kConfiguration) for an unmapped emotion
/// and Error(kContract) for non-positive fps or out-of-order streams.
TensionBreakdown accumulate_detailed(const VideoFeatures& features, const FusionConfig& config,
                                     const std::optional<LoudnessRange>& range = std::nullopt);

TensionScores accumulate(const VideoFeatures& features, const FusionConfig& config);

/// The bin with the larger score; ties go to config.tie_break.
TensionLevel classify(const TensionScores& scores, const FusionConfig& config);

}  // namespace tension::fusion

#endif  // TENSION_FUSION_HPP
