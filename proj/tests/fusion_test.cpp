// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/fusion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "test_support.hpp"

namespace tension::fusion {
namespace {

using prosody::ProsodyFrame;
using visual::EmotionLabel;

ProsodyFrame frame(double time, double db, double voicing) {
  return {time, db, voicing > 0.45 ? 200.0 : 0.0, voicing};
}

std::vector<ProsodyFrame> track(std::size_t n, double db, double voicing) {
  std::vector<ProsodyFrame> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(frame(0.0125 + 0.01 * i, db, voicing));
  return out;
}

sentiment::ScoredSentence scored(double start, double end, int sum) {
  sentiment::ScoredSentence s;
  s.sentence = {"text", {start, end}, 1};
  s.sentiment.sum = sum;
  return s;
}

// Linear-scan reimplementation of the weighting and accumulation rules.
double oracle_weight(const std::vector<ProsodyFrame>& p, double start, double end, double lo,
                     double hi, double eps) {
  long double acc = 0.0L;
  int n = 0;
  for (const auto& f : p) {
    if (f.time < start || f.time > end) continue;
    const double norm = hi > lo ? std::clamp((f.loudness_db - lo) / (hi - lo), 0.0, 1.0) : 1.0;
    acc += static_cast<long double>(f.voicing_prob) * norm;
    ++n;
  }
  if (n == 0) return eps;
  return eps + (1.0 - eps) * static_cast<double>(acc / n);
}

TensionScores oracle_accumulate(const VideoFeatures& v, const FusionConfig& c) {
  double lo = 0.0, hi = 0.0;
  if (!v.prosody.empty()) {
    lo = hi = v.prosody[0].loudness_db;
    for (const auto& f : v.prosody) {
      lo = std::min(lo, f.loudness_db);
      hi = std::max(hi, f.loudness_db);
    }
  }
  long double low = 0.0L, high = 0.0L;
  for (const auto& f : v.visual) {
    if (f.emotion == EmotionLabel::kNonexistent) continue;
    const double t = static_cast<double>(f.frame_index) / v.fps;
    const double w = oracle_weight(v.prosody, t - 0.005, t + 0.005, lo, hi, c.weight_floor);
    const long double term = static_cast<long double>(f.intensity) * f.field_size * w;
    (f.emotion == EmotionLabel::kHappiness ? low : high) += term;
  }
  for (const auto& s : v.sentiments) {
    const double w =
        oracle_weight(v.prosody, s.sentence.span.start, s.sentence.span.end, lo, hi, c.weight_floor);
    if (s.sentiment.sum < 0) high += static_cast<long double>(-s.sentiment.sum) * w;
    if (s.sentiment.sum > 0) low += static_cast<long double>(s.sentiment.sum) * w;
  }
  return {static_cast<double>(low), static_cast<double>(high)};
}

VideoFeatures random_video(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VideoFeatures v;
  v.fps = 10.0;
  const double duration = 1.0 + 4.0 * unit(rng);
  const auto n_prosody = static_cast<std::size_t>((duration - 0.025) / 0.01);
  for (std::size_t i = 0; i < n_prosody; ++i) {
    v.prosody.push_back(frame(0.0125 + 0.01 * i, -96.0 + 90.0 * unit(rng), unit(rng)));
  }
  const auto n_frames = static_cast<std::int64_t>(duration * v.fps);
  for (std::int64_t i = 0; i < n_frames; ++i) {
    if (unit(rng) < 0.2) continue;
    visual::VisualFeatures f;
    f.frame_index = i;
    f.emotion = static_cast<EmotionLabel>(static_cast<int>(unit(rng) * 8));
    if (f.emotion != EmotionLabel::kNonexistent) {
      f.intensity = 3.0 * unit(rng);
      f.field_size = unit(rng);
    }
    v.visual.push_back(f);
  }
  double t = 0.0;
  while (t < duration - 0.3) {
    const double len = 0.2 + unit(rng);
    v.sentiments.push_back(scored(t, std::min(t + len, duration), static_cast<int>(unit(rng) * 37) - 18));
    t += len + 0.1 * unit(rng);
  }
  return v;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

TEST(AudioWeight, Examples) {
  const FusionConfig config;
  const auto silent = track(100, -96.0, 0.0);
  EXPECT_DOUBLE_EQ(audio_weight(silent, {0.1, 0.5}, loudness_range(silent, config.loudness_normalization), config), 0.1);

  auto loud = track(100, -10.0, 1.0);
  loud[0].loudness_db = -60.0;
  loud[0].voicing_prob = 0.0;
  const auto range = loudness_range(loud, config.loudness_normalization);
  EXPECT_DOUBLE_EQ(audio_weight(loud, {0.1, 0.5}, range, config), 1.0);
  EXPECT_DOUBLE_EQ(audio_weight(loud, {5.0, 6.0}, range, config), 0.1);
}

TEST(AudioWeight, SpanBoundsAreInclusive) {
  const FusionConfig config;
  const std::vector<ProsodyFrame> p = {frame(1.0, -10, 1.0), frame(2.0, -10, 0.0)};
  const LoudnessRange range{-20.0, -10.0};
  EXPECT_DOUBLE_EQ(audio_weight(p, {1.0, 1.0}, range, config), 1.0);
  EXPECT_DOUBLE_EQ(audio_weight(p, {1.0, 2.0}, range, config), 0.1 + 0.9 * 0.5);
}

TEST(LoudnessRangeTest, Modes) {
  const std::vector<ProsodyFrame> p = {frame(0, -40, 0), frame(1, -20, 0)};
  const auto per_video = loudness_range(p, LoudnessNormalization::kPerVideoMinMax);
  EXPECT_EQ(per_video.min_db, -40.0);
  EXPECT_EQ(per_video.max_db, -20.0);
  EXPECT_DOUBLE_EQ(per_video.normalize(-30.0), 0.5);
  const auto absolute = loudness_range(p, LoudnessNormalization::kAbsolute);
  EXPECT_DOUBLE_EQ(absolute.normalize(-48.0), 0.5);
  const LoudnessRange flat{-30.0, -30.0};
  EXPECT_DOUBLE_EQ(flat.normalize(-30.0), 1.0);
}

TEST(Accumulate, SingleHappyFrame) {
  VideoFeatures v;
  v.fps = 25.0;
  v.prosody = {frame(0.0, -10.0, 1.0)};
  v.visual = {{0, EmotionLabel::kHappiness, 2.0, 0.5}};
  const auto s = accumulate(v, FusionConfig{});
  EXPECT_DOUBLE_EQ(s.low, 1.0);
  EXPECT_DOUBLE_EQ(s.high, 0.0);
}

TEST(Accumulate, CaptionsOnly) {
  VideoFeatures v;
  // Four of nine frames fully voiced at the loudest level: 0.1 + 0.9 * 4/9 = 0.5.
  for (int i = 0; i < 9; ++i) v.prosody.push_back(i < 4 ? frame(0.1 * i, -10.0, 1.0) : frame(0.1 * i, -50.0, 0.0));
  v.sentiments = {scored(0.0, 1.0, -5)};
  const auto s = accumulate(v, FusionConfig{});
  EXPECT_DOUBLE_EQ(s.low, 0.0);
  EXPECT_DOUBLE_EQ(s.high, 2.5);
}

TEST(Accumulate, EmptyFeatures) {
  const auto s = accumulate(VideoFeatures{}, FusionConfig{});
  EXPECT_EQ(s.low, 0.0);
  EXPECT_EQ(s.high, 0.0);
}

TEST(Accumulate, UnmappedEmotionIsConfigurationError) {
  VideoFeatures v;
  v.visual = {{0, EmotionLabel::kFear, 1.0, 0.5}};
  FusionConfig config;
  config.emotion_map.erase(EmotionLabel::kFear);
  EXPECT_ERROR_KIND(accumulate(v, config), ErrorKind::kConfiguration);
}

TEST(Accumulate, OutOfOrderStreamsRejected) {
  VideoFeatures v;
  v.visual = {{3, EmotionLabel::kFear, 1.0, 0.5}, {1, EmotionLabel::kFear, 1.0, 0.5}};
  EXPECT_ERROR_KIND(accumulate(v, FusionConfig{}), ErrorKind::kContract);
  VideoFeatures w;
  w.sentiments = {scored(2, 3, 1), scored(0, 1, 1)};
  EXPECT_ERROR_KIND(accumulate(w, FusionConfig{}), ErrorKind::kContract);
  VideoFeatures z;
  z.fps = 0.0;
  EXPECT_ERROR_KIND(accumulate(z, FusionConfig{}), ErrorKind::kContract);
}

TEST(Classify, Examples) {
  const FusionConfig config;
  EXPECT_EQ(classify({1.0, 0.0}, config), TensionLevel::kLow);
  EXPECT_EQ(classify({0.0, 2.5}, config), TensionLevel::kHigh);
  EXPECT_EQ(classify({0.0, 0.0}, config), TensionLevel::kLow);
  FusionConfig high_ties;
  high_ties.tie_break = TensionLevel::kHigh;
  EXPECT_EQ(classify({0.0, 0.0}, high_ties), TensionLevel::kHigh);
}

TEST(FusionConfigTest, Validation) {
  FusionConfig c;
  c.weight_floor = 0.0;
  EXPECT_ERROR_KIND(c.validate(), ErrorKind::kConfiguration);
  c.weight_floor = 1.5;
  EXPECT_ERROR_KIND(c.validate(), ErrorKind::kConfiguration);
  EXPECT_NO_THROW(FusionConfig{}.validate());
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(parse_level("HIGH"), TensionLevel::kHigh);
  EXPECT_EQ(parse_level("low"), TensionLevel::kLow);
  EXPECT_FALSE(parse_level("medium").has_value());
  EXPECT_EQ(parse_normalization("absolute"), LoudnessNormalization::kAbsolute);
  EXPECT_EQ(parse_normalization(to_string(LoudnessNormalization::kPerVideoMinMax)),
            LoudnessNormalization::kPerVideoMinMax);
}

// Properties.

TEST(FusionProperty, MatchesLinearScanOracle) {
  std::mt19937 rng(100);
  const FusionConfig config;
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = random_video(rng);
    const auto got = accumulate(v, config);
    const auto want = oracle_accumulate(v, config);
    EXPECT_TRUE(close(got.low, want.low)) << got.low << " vs " << want.low;
    EXPECT_TRUE(close(got.high, want.high)) << got.high << " vs " << want.high;
  }
}

TEST(FusionProperty, ScoresNonNegativeAndFinite) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = accumulate(random_video(rng), FusionConfig{});
    EXPECT_TRUE(std::isfinite(s.low) && s.low >= 0.0);
    EXPECT_TRUE(std::isfinite(s.high) && s.high >= 0.0);
  }
}

TEST(FusionProperty, ScalingPreservesClass) {
  std::mt19937 rng(102);
  std::uniform_real_distribution<double> factor(0.01, 100.0);
  const FusionConfig config;
  for (int trial = 0; trial < 200; ++trial) {
    auto v = random_video(rng);
    const auto original = accumulate(v, config);
    // Exact ties can flip under rounding once scaled.
    if (original.low == original.high) continue;
    const auto before = classify(original, config);
    const double k = factor(rng);
    // Sentiment sums are integers, so scale their contributions after weighting.
    for (auto& f : v.visual) f.intensity *= k;
    const auto d = accumulate_detailed(v, config);
    const TensionScores scaled{d.visual.low + k * d.sentiment.low, d.visual.high + k * d.sentiment.high};
    EXPECT_EQ(classify(scaled, config), before);
  }
}

TEST(FusionProperty, NoCaptionPath) {
  std::mt19937 rng(103);
  const FusionConfig config;
  for (int trial = 0; trial < 100; ++trial) {
    auto v = random_video(rng);
    v.sentiments.clear();
    const auto d = accumulate_detailed(v, config);
    EXPECT_EQ(d.sentiment.low, 0.0);
    EXPECT_EQ(d.sentiment.high, 0.0);
    EXPECT_EQ(d.total.low, d.visual.low);
    EXPECT_EQ(d.total.high, d.visual.high);
  }
}

TEST(FusionProperty, AdditiveOverTimePartitions) {
  std::mt19937 rng(104);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const FusionConfig config;
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = random_video(rng);
    const auto range = loudness_range(v.prosody, config.loudness_normalization);
    const double cut = 5.0 * unit(rng);
    VideoFeatures a, b;
    a.fps = b.fps = v.fps;
    a.prosody = b.prosody = v.prosody;
    for (const auto& f : v.visual) {
      (static_cast<double>(f.frame_index) / v.fps < cut ? a : b).visual.push_back(f);
    }
    for (const auto& s : v.sentiments) (s.sentence.span.start < cut ? a : b).sentiments.push_back(s);
    const auto whole = accumulate_detailed(v, config, range).total;
    const auto pa = accumulate_detailed(a, config, range).total;
    const auto pb = accumulate_detailed(b, config, range).total;
    EXPECT_TRUE(close(pa.low + pb.low, whole.low));
    EXPECT_TRUE(close(pa.high + pb.high, whole.high));
  }
}

TEST(FusionProperty, Deterministic) {
  std::mt19937 rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_video(rng);
    const auto a = accumulate(v, FusionConfig{});
    const auto b = accumulate(v, FusionConfig{});
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

}  // namespace
}  // namespace tension::fusion
