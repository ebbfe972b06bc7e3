// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tension/error.hpp"

namespace tension::fusion {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct BinSums {
  CompensatedSum low;
  CompensatedSum high;

  void add(TensionLevel level, double v) { (level == TensionLevel::kLow ? low : high).add(v); }
  TensionScores scores() const { return {low.value(), high.value()}; }
};

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return lower(x) == lower(y); });
}

}  // namespace

std::string_view to_string(TensionLevel level) {
  return level == TensionLevel::kLow ? "low" : "high";
}

std::optional<TensionLevel> parse_level(std::string_view text) {
  if (iequals(text, "low")) return TensionLevel::kLow;
  if (iequals(text, "high")) return TensionLevel::kHigh;
  return std::nullopt;
}

std::string_view to_string(LoudnessNormalization mode) {
  return mode == LoudnessNormalization::kPerVideoMinMax ? "per_video_minmax" : "absolute";
}

std::optional<LoudnessNormalization> parse_normalization(std::string_view text) {
  if (text == "per_video_minmax") return LoudnessNormalization::kPerVideoMinMax;
  if (text == "absolute") return LoudnessNormalization::kAbsolute;
  return std::nullopt;
}

EmotionMap default_emotion_map() {
  using visual::EmotionLabel;
  return {
      {EmotionLabel::kHappiness, TensionLevel::kLow},  {EmotionLabel::kSurprise, TensionLevel::kHigh},
      {EmotionLabel::kAversion, TensionLevel::kHigh},  {EmotionLabel::kContempt, TensionLevel::kHigh},
      {EmotionLabel::kAnger, TensionLevel::kHigh},     {EmotionLabel::kFear, TensionLevel::kHigh},
      {EmotionLabel::kSadness, TensionLevel::kHigh},
  };
}

void FusionConfig::validate() const {
  for (visual::EmotionLabel e : visual::kEmotions) {
    if (!emotion_map.contains(e)) {
      throw Error(ErrorKind::kConfiguration,
                  "emotion '" + std::string(visual::to_string(e)) + "' has no tension level");
    }
  }
  if (emotion_map.contains(visual::EmotionLabel::kNonexistent)) {
    throw Error(ErrorKind::kConfiguration, "'nonexistent' cannot be mapped to a tension level");
  }
  if (!(weight_floor > 0.0 && weight_floor < 1.0)) {
    throw Error(ErrorKind::kConfiguration, "weight floor must lie in (0, 1)");
  }
  if (!(frame_half_window >= 0.0)) {
    throw Error(ErrorKind::kConfiguration, "frame half window must be non-negative");
  }
}

double LoudnessRange::normalize(double db) const {
  if (!(max_db > min_db)) return 1.0;
  return std::clamp((db - min_db) / (max_db - min_db), 0.0, 1.0);
}

LoudnessRange loudness_range(std::span<const prosody::ProsodyFrame> prosody,
                             LoudnessNormalization mode) {
  if (mode == LoudnessNormalization::kAbsolute || prosody.empty()) return {};
  const auto [lo, hi] = std::minmax_element(
      prosody.begin(), prosody.end(),
      [](const auto& a, const auto& b) { return a.loudness_db < b.loudness_db; });
  return {lo->loudness_db, hi->loudness_db};
}

double audio_weight(std::span<const prosody::ProsodyFrame> prosody, caption::TimeSpan span,
                    const LoudnessRange& range, const FusionConfig& config) {
  const auto first = std::lower_bound(
      prosody.begin(), prosody.end(), span.start,
      [](const prosody::ProsodyFrame& f, double t) { return f.time < t; });
  const auto last = std::upper_bound(
      first, prosody.end(), span.end,
      [](double t, const prosody::ProsodyFrame& f) { return t < f.time; });
  if (first == last) return config.weight_floor;

  CompensatedSum acc;
  for (auto it = first; it != last; ++it) acc.add(it->voicing_prob * range.normalize(it->loudness_db));
  const double mean = acc.value() / static_cast<double>(last - first);
  return config.weight_floor + (1.0 - config.weight_floor) * std::clamp(mean, 0.0, 1.0);
}

TensionBreakdown accumulate_detailed(const VideoFeatures& features, const FusionConfig& config,
                                     const std::optional<LoudnessRange>& range) {
  if (!(features.fps > 0.0)) throw Error(ErrorKind::kContract, "fps must be positive");
  const LoudnessRange norm =
      range.value_or(loudness_range(features.prosody, config.loudness_normalization));

  for (std::size_t i = 1; i < features.prosody.size(); ++i) {
    if (features.prosody[i].time < features.prosody[i - 1].time) {
      throw Error(ErrorKind::kContract, "prosody frames are not time-ordered");
    }
  }

  BinSums visual_bins;
  std::int64_t previous_frame = -1;
  for (const auto& f : features.visual) {
    if (f.frame_index < previous_frame) {
      throw Error(ErrorKind::kContract, "visual frames are not time-ordered");
    }
    previous_frame = f.frame_index;
    if (f.emotion == visual::EmotionLabel::kNonexistent) continue;
    const auto level = config.emotion_map.find(f.emotion);
    if (level == config.emotion_map.end()) {
      throw Error(ErrorKind::kConfiguration,
                  "emotion '" + std::string(visual::to_string(f.emotion)) + "' is not mapped");
    }
    const double t = static_cast<double>(f.frame_index) / features.fps;
    const double w = audio_weight(features.prosody,
                                  {t - config.frame_half_window, t + config.frame_half_window},
                                  norm, config);
    visual_bins.add(level->second, f.intensity * f.field_size * w);
  }

  BinSums sentiment_bins;
  double previous_start = -std::numeric_limits<double>::infinity();
  for (const auto& s : features.sentiments) {
    if (s.sentence.span.start < previous_start) {
      throw Error(ErrorKind::kContract, "sentences are not time-ordered");
    }
    previous_start = s.sentence.span.start;
    const int sum = s.sentiment.sum;
    if (sum == 0) continue;
    const double w = audio_weight(features.prosody, s.sentence.span, norm, config);
    sentiment_bins.add(sum < 0 ? TensionLevel::kHigh : TensionLevel::kLow, std::abs(sum) * w);
  }

  TensionBreakdown out;
  out.visual = visual_bins.scores();
  out.sentiment = sentiment_bins.scores();
  out.total = {out.visual.low + out.sentiment.low, out.visual.high + out.sentiment.high};
  return out;
}

TensionScores accumulate(const VideoFeatures& features, const FusionConfig& config) {
  return accumulate_detailed(features, config).total;
}

TensionLevel classify(const TensionScores& scores, const FusionConfig& config) {
  if (scores.high > scores.low) return TensionLevel::kHigh;
  if (scores.low > scores.high) return TensionLevel::kLow;
  return config.tie_break;
}

}  // namespace tension::fusion
