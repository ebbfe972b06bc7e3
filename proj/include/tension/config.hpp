// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_CONFIG_HPP
#define TENSION_CONFIG_HPP

#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tension/fusion.hpp"
#include "tension/prosody.hpp"
#include "tension/sentiment.hpp"

namespace tension {

/// One ensemble member: either a compiled-in lexicon or a lexicon directory.
struct ScorerSpec {
  std::string name;
  std::string builtin;      // "general" | "news"
  std::string lexicon_dir;  // relative paths resolve against the config file
};

/// Everything that influences analysis output.
///
/// JSON layout (every key optional; omitted keys take the defaults below):
///
///   {
///     "fusion": {"emotion_map": {"happiness": "low", ...},  // all seven, if given
///                "weight_floor": 0.1,
///                "loudness_normalization": "per_video_minmax" | "absolute",
///                "tie_break": "low",
///                "frame_half_window": 0.005},
///     "prosody": {"hop": 0.01, "window": 0.025, "voicing_threshold": 0.45,
///                 "f0_min": 50, "f0_max": 500, "pitch_periods": 3,
///                 "octave_tolerance": 0.1},
///     "scorers": [{"name": "general", "builtin": "general"},
///                 {"name": "mine", "lexicon": "lexicons/mine"}],
///     "workers": 0,
///     "write_intermediates": false
///   }
struct RunConfig {
  fusion::FusionConfig fusion;
  prosody::ProsodyConfig prosody;
  std::vector<ScorerSpec> scorers = {{"general", "general", ""}, {"news", "news", ""}};
  int workers = 0;  // 0 picks the available parallelism
  bool write_intermediates = false;
  std::filesystem::path base_dir;  // where lexicon paths are resolved from

  /// Throws Error(kConfiguration).
  void validate() const;
};

/// Throws Error(kConfiguration) for invalid JSON, unknown keys or bad values.
RunConfig parse_run_config(std::string_view document, const std::filesystem::path& base_dir = {});

/// The effective configuration with every default filled in.
nlohmann::json to_json(const RunConfig& config);

/// Builds the scorer ensemble; K is fixed for the run.
sentiment::Ensemble build_ensemble(const RunConfig& config);

}  // namespace tension

#endif  // TENSION_CONFIG_HPP
