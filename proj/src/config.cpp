// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/config.hpp"

#include <optional>
#include <set>

#include "tension/error.hpp"

namespace tension {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorKind::kConfiguration, message);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + "." + key + " has the wrong type");
  }
}

double read_number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) fail(where + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

fusion::TensionLevel read_level(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where + " must be \"low\" or \"high\"");
  const auto level = fusion::parse_level(v.get<std::string>());
  if (!level) fail(where + " must be \"low\" or \"high\"");
  return *level;
}

}  // namespace

void RunConfig::validate() const {
  fusion.validate();
  prosody.validate();
  if (scorers.empty()) fail("the scorer ensemble is empty");
  std::set<std::string> names;
  for (const auto& s : scorers) {
    if (s.name.empty()) fail("scorer without a name");
    if (!names.insert(s.name).second) fail("duplicate scorer name '" + s.name + "'");
    if (s.builtin.empty() == s.lexicon_dir.empty()) {
      fail("scorer '" + s.name + "' needs exactly one of 'builtin' or 'lexicon'");
    }
  }
  if (workers < 0) fail("workers must be non-negative");
}

RunConfig parse_run_config(std::string_view document, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig config;
  config.base_dir = base_dir;
  reject_unknown(root, {"fusion", "prosody", "scorers", "workers", "write_intermediates"}, "config");

  if (root.contains("fusion")) {
    const json& f = root.at("fusion");
    reject_unknown(f,
                   {"emotion_map", "weight_floor", "loudness_normalization", "tie_break",
                    "frame_half_window"},
                   "fusion");
    auto& fc = config.fusion;
    if (f.contains("emotion_map")) {
      const json& m = f.at("emotion_map");
      if (!m.is_object()) fail("fusion.emotion_map must be an object");
      fc.emotion_map.clear();
      for (const auto& [key, value] : m.items()) {
        const auto emotion = visual::parse_emotion(key);
        if (!emotion || *emotion == visual::EmotionLabel::kNonexistent) {
          fail("fusion.emotion_map has unknown emotion '" + key + "'");
        }
        fc.emotion_map[*emotion] = read_level(value, "fusion.emotion_map." + key);
      }
    }
    fc.weight_floor = read_number(f, "weight_floor", fc.weight_floor, "fusion");
    fc.frame_half_window = read_number(f, "frame_half_window", fc.frame_half_window, "fusion");
    if (f.contains("loudness_normalization")) {
      std::string mode;
      read(f, "loudness_normalization", mode, "fusion");
      const auto parsed = fusion::parse_normalization(mode);
      if (!parsed) fail("fusion.loudness_normalization must be per_video_minmax or absolute");
      fc.loudness_normalization = *parsed;
    }
    if (f.contains("tie_break")) fc.tie_break = read_level(f.at("tie_break"), "fusion.tie_break");
  }

  if (root.contains("prosody")) {
    const json& p = root.at("prosody");
    reject_unknown(p,
                   {"hop", "window", "voicing_threshold", "f0_min", "f0_max", "pitch_periods",
                    "octave_tolerance"},
                   "prosody");
    auto& pc = config.prosody;
    pc.hop = read_number(p, "hop", pc.hop, "prosody");
    pc.window = read_number(p, "window", pc.window, "prosody");
    pc.voicing_threshold = read_number(p, "voicing_threshold", pc.voicing_threshold, "prosody");
    pc.f0_min = read_number(p, "f0_min", pc.f0_min, "prosody");
    pc.f0_max = read_number(p, "f0_max", pc.f0_max, "prosody");
    pc.pitch_periods = read_number(p, "pitch_periods", pc.pitch_periods, "prosody");
    pc.octave_tolerance = read_number(p, "octave_tolerance", pc.octave_tolerance, "prosody");
  }

  if (root.contains("scorers")) {
    const json& s = root.at("scorers");
    if (!s.is_array()) fail("scorers must be an array");
    config.scorers.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string where = "scorers[" + std::to_string(i) + "]";
      reject_unknown(s[i], {"name", "builtin", "lexicon"}, where);
      ScorerSpec spec;
      read(s[i], "name", spec.name, where);
      read(s[i], "builtin", spec.builtin, where);
      read(s[i], "lexicon", spec.lexicon_dir, where);
      config.scorers.push_back(std::move(spec));
    }
  }

  read(root, "workers", config.workers, "config");
  read(root, "write_intermediates", config.write_intermediates, "config");
  config.validate();
  return config;
}

json to_json(const RunConfig& config) {
  json emotion_map = json::object();
  for (const auto& [emotion, level] : config.fusion.emotion_map) {
    emotion_map[std::string(visual::to_string(emotion))] = std::string(fusion::to_string(level));
  }
  json scorers = json::array();
  for (const auto& s : config.scorers) {
    json entry = {{"name", s.name}};
    if (!s.builtin.empty()) entry["builtin"] = s.builtin;
    if (!s.lexicon_dir.empty()) entry["lexicon"] = s.lexicon_dir;
    scorers.push_back(std::move(entry));
  }
  const auto& f = config.fusion;
  const auto& p = config.prosody;
  return {
      {"fusion",
       {{"emotion_map", emotion_map},
        {"weight_floor", f.weight_floor},
        {"loudness_normalization", std::string(fusion::to_string(f.loudness_normalization))},
        {"tie_break", std::string(fusion::to_string(f.tie_break))},
        {"frame_half_window", f.frame_half_window}}},
      {"prosody",
       {{"hop", p.hop},
        {"window", p.window},
        {"voicing_threshold", p.voicing_threshold},
        {"f0_min", p.f0_min},
        {"f0_max", p.f0_max},
        {"pitch_periods", p.pitch_periods},
        {"octave_tolerance", p.octave_tolerance}}},
      {"scorers", scorers},
      {"workers", config.workers},
      {"write_intermediates", config.write_intermediates},
  };
}

sentiment::Ensemble build_ensemble(const RunConfig& config) {
  sentiment::Ensemble ensemble;
  for (const auto& s : config.scorers) {
    std::optional<sentiment::Lexicon> lexicon;
    try {
      lexicon = s.builtin.empty() ? sentiment::load_lexicon(config.base_dir / s.lexicon_dir)
                                  : sentiment::builtin_lexicon(s.builtin);
    } catch (const Error& e) {
      fail("scorer '" + s.name + "': " + e.what());
    }
    ensemble.push_back(std::make_shared<sentiment::LexiconScorer>(s.name, std::move(*lexicon)));
  }
  return ensemble;
}

}  // namespace tension
