// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>

#include "tension/caption.hpp"
#include "tension/config.hpp"
#include "tension/error.hpp"
#include "tension/visual.hpp"

namespace tension::fixtures {
namespace {

using fusion::TensionLevel;
using nlohmann::json;
using visual::EmotionLabel;

constexpr int kSampleRate = 16000;
constexpr double kSeconds = 3.0;
constexpr double kFps = 10.0;
constexpr int kFrames = 30;
constexpr int kWidth = 640;
constexpr int kHeight = 360;

// Sentence sums under the two built-in lexicons.
constexpr const char* kNegative = "Fire and violence: victims of the terrible attack.";  // -2
constexpr const char* kPositive = "Wonderful celebration as rescued survivors smile.";   // +2
constexpr const char* kNeutral = "The minister spoke on Tuesday.";                       //  0
constexpr const char* kMixed = "Good weather but a crash on the highway.";               // +1 -1

enum class Audio { kVoiced200, kVoiced120, kSilence, kNoise, kSilentThenVoiced, kVoicedThenSilent };

struct FaceSpec {
  EmotionLabel emotion;
  double margin;  // winning decision value; the other six get -1
  double field;   // fraction of the frame
};

struct Cue {
  double start;
  double end;
  const char* text;
};

struct Recipe {
  const char* id;
  Audio audio;
  std::vector<FaceSpec> faces;       // every frame
  std::vector<FaceSpec> late_faces;  // frames 15..29 when non-empty
  std::vector<Cue> cues;
  bool has_srt;
  TensionLevel label;
  const char* votes;  // one letter per annotator
};

constexpr Cue kEarly{0.2, 1.2, kNegative};

std::vector<Recipe> recipes() {
  const auto L = TensionLevel::kLow;
  const auto H = TensionLevel::kHigh;
  const auto hap = EmotionLabel::kHappiness;
  const auto ang = EmotionLabel::kAnger;
  return {
      {"v01", Audio::kVoiced200, {{hap, 1.0, 0.25}}, {}, {{0.2, 1.2, kPositive}, {1.5, 2.5, kPositive}}, true, L, "LLLL"},
      {"v02", Audio::kVoiced200, {{ang, 1.0, 0.25}}, {}, {{0.2, 1.2, kNegative}, {1.5, 2.5, kNegative}}, true, H, "HHHH"},
      {"v03", Audio::kNoise, {{EmotionLabel::kFear, 0.8, 0.16}}, {}, {kEarly}, true, H, "HHHL"},
      {"v04", Audio::kSilence, {{hap, 2.0, 0.5}}, {}, {}, false, L, "LLLL"},
      {"v05", Audio::kSilence, {{EmotionLabel::kSadness, 1.5, 0.25}}, {}, {}, false, H, "HHHH"},
      {"v06", Audio::kVoiced200, {}, {}, {}, false, L, "HHLL"},
      {"v07", Audio::kVoiced200, {}, {}, {{0.2, 1.0, kNegative}, {1.1, 1.9, kNegative}, {2.0, 2.8, kNegative}}, true, H, "HHHH"},
      {"v08", Audio::kVoiced120, {}, {}, {{0.2, 1.2, kPositive}, {1.5, 2.5, kPositive}}, true, L, "LLLL"},
      {"v09", Audio::kVoiced200, {{hap, 2.0, 0.5}}, {}, {kEarly}, true, L, "LLLH"},
      {"v10", Audio::kVoiced200, {{hap, 0.5, 0.01}}, {}, {{0.2, 1.2, kNegative}, {1.5, 2.5, kNegative}}, true, H, "HHHH"},
      {"v11", Audio::kVoiced120, {{ang, 1.0, 0.3}, {hap, 3.0, 0.05}}, {}, {}, false, H, "HHHH"},
      {"v12", Audio::kVoiced120, {{hap, 1.0, 0.3}, {ang, 3.0, 0.05}}, {}, {}, false, L, "LLLL"},
      {"v13", Audio::kVoiced200, {{EmotionLabel::kSurprise, -0.2, 0.25}}, {}, {kEarly}, true, H, "HHHH"},
      {"v14", Audio::kNoise, {{EmotionLabel::kSurprise, -0.2, 0.25}}, {}, {}, false, L, "LHLH"},
      {"v15", Audio::kVoiced200, {{hap, 1.0, 0.1}}, {{ang, 2.0, 0.6}}, {}, false, H, "HHHH"},
      {"v16", Audio::kVoiced200, {}, {}, {{0.2, 1.2, kNeutral}, {1.5, 2.5, kMixed}}, true, L, "LLLL"},
      {"v17", Audio::kVoiced120, {{EmotionLabel::kSurprise, 1.0, 0.2}}, {}, {}, false, H, "HHHH"},
      {"v18", Audio::kVoiced120, {{hap, 1.0, 0.2}}, {}, {{1.5, 2.5, kMixed}}, true, L, "LLLL"},
      {"v19", Audio::kSilentThenVoiced, {{EmotionLabel::kContempt, 1.0, 0.2}}, {{EmotionLabel::kAversion, 1.0, 0.2}}, {}, false, H, "HHHH"},
      {"v20", Audio::kVoicedThenSilent, {{hap, 1.0, 0.4}}, {}, {{2.0, 2.8, kNegative}}, true, L, "LLLL"},
  };
}

prosody::AudioSignal render(Audio audio, std::uint32_t seed) {
  switch (audio) {
    case Audio::kVoiced200: return sine(200.0, 0.5, kSeconds);
    case Audio::kVoiced120: return sine(120.0, 0.5, kSeconds);
    case Audio::kSilence: return silence(kSeconds);
    case Audio::kNoise: return white_noise(0.3, kSeconds, seed);
    case Audio::kSilentThenVoiced:
    case Audio::kVoicedThenSilent: {
      auto s = sine(200.0, 0.5, kSeconds);
      const std::size_t half = s.samples.size() / 2;
      if (audio == Audio::kSilentThenVoiced) {
        std::fill(s.samples.begin(), s.samples.begin() + static_cast<std::ptrdiff_t>(half), 0.0);
      } else {
        std::fill(s.samples.begin() + static_cast<std::ptrdiff_t>(half), s.samples.end(), 0.0);
      }
      return s;
    }
  }
  return silence(kSeconds);
}

json face_json(const FaceSpec& spec, bool right_aligned) {
  const double w = kWidth * spec.field;
  json margins = json::object();
  for (EmotionLabel e : visual::kEmotions) {
    margins[std::string(visual::to_string(e))] = e == spec.emotion ? spec.margin : -1.0;
  }
  return {{"x", right_aligned ? kWidth - w : 0.0}, {"y", 0.0}, {"w", w}, {"h", kHeight},
          {"margins", margins}};
}

json visual_json(const Recipe& r) {
  json frames = json::array();
  for (int i = 0; i < kFrames; ++i) {
    const auto& specs = (i >= kFrames / 2 && !r.late_faces.empty()) ? r.late_faces : r.faces;
    json faces = json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) faces.push_back(face_json(specs[k], k > 0));
    frames.push_back({{"index", i}, {"faces", faces}});
  }
  return {{"frame_width", kWidth}, {"frame_height", kHeight}, {"frames", frames}};
}

void write(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace

prosody::AudioSignal sine(double hz, double amplitude, double seconds, int sample_rate,
                          double phase) {
  prosody::AudioSignal s;
  s.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) /
                                            sample_rate + phase);
  }
  return s;
}

prosody::AudioSignal white_noise(double amplitude, double seconds, std::uint32_t seed,
                                 int sample_rate) {
  prosody::AudioSignal s;
  s.sample_rate = sample_rate;
  std::mt19937 rng(seed);
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  s.samples.resize(n);
  // Raw engine output keeps the samples identical across standard libraries.
  for (auto& v : s.samples) v = amplitude * (2.0 * (rng() / 4294967296.0) - 1.0);
  return s;
}

prosody::AudioSignal silence(double seconds, int sample_rate) {
  prosody::AudioSignal s;
  s.sample_rate = sample_rate;
  s.samples.assign(static_cast<std::size_t>(std::lround(seconds * sample_rate)), 0.0);
  return s;
}

std::vector<GeneratedVideo> generate_dataset(const std::filesystem::path& out_dir) {
  const auto videos_dir = out_dir / "videos";
  std::error_code ec;
  std::filesystem::create_directories(videos_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + videos_dir.string() + ": " + ec.message());

  std::string manifest;
  std::string annotations = "video_id,annotator_id,label\n";
  std::string expected = "video_id,label\n";
  std::vector<GeneratedVideo> generated;
  std::uint32_t seed = 1000;

  for (const Recipe& r : recipes()) {
    const std::string id = r.id;
    const auto wav = encode_wav(render(r.audio, seed++));
    write(videos_dir / (id + ".wav"),
          std::string_view(reinterpret_cast<const char*>(wav.data()), wav.size()));
    write(videos_dir / (id + ".visual.json"), visual_json(r).dump(1) + "\n");

    json line = {{"video_id", id},
                 {"wav", "videos/" + id + ".wav"},
                 {"visual", "videos/" + id + ".visual.json"},
                 {"fps", kFps}};
    if (r.has_srt) {
      std::vector<caption::CaptionCue> cues;
      int index = 1;
      for (const Cue& c : r.cues) {
        cues.push_back({index++, std::llround(c.start * 1000), std::llround(c.end * 1000), c.text});
      }
      write(videos_dir / (id + ".srt"), caption::serialize_srt(cues));
      line["srt"] = "videos/" + id + ".srt";
    }
    manifest += line.dump() + "\n";

    for (int a = 0; r.votes[a] != '\0'; ++a) {
      annotations += id + ",a" + std::to_string(a + 1) + "," +
                     (r.votes[a] == 'H' ? "high" : "low") + "\n";
    }
    expected += id + "," + std::string(fusion::to_string(r.label)) + "\n";
    generated.push_back({id, r.label});
  }

  write(out_dir / "manifest.jsonl", manifest);
  write(out_dir / "annotations.csv", annotations);
  write(out_dir / "expected_labels.csv", expected);
  write(out_dir / "config.json", to_json(RunConfig{}).dump(2) + "\n");
  return generated;
}

}  // namespace tension::fixtures
