// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_FIXTURES_HPP
#define TENSION_FIXTURES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "tension/fusion.hpp"
#include "tension/wav.hpp"

namespace tension::fixtures {

/// Deterministic synthetic signals.
prosody::AudioSignal sine(double hz, double amplitude, double seconds, int sample_rate = 16000,
                          double phase = 0.0);
prosody::AudioSignal white_noise(double amplitude, double seconds, std::uint32_t seed,
                                 int sample_rate = 16000);
prosody::AudioSignal silence(double seconds, int sample_rate = 16000);

struct GeneratedVideo {
  std::string video_id;
  fusion::TensionLevel intended = fusion::TensionLevel::kLow;
};

/// Writes a 20-video desk-scale dataset into `out_dir`:
///   videos/<id>.wav, videos/<id>.visual.json, videos/<id>.srt (most videos),
///   manifest.jsonl, config.json, annotations.csv, expected_labels.csv.
/// Each video is scripted so its label follows from bounding the bin sums
/// with audio weights anywhere in [floor, 1].
std::vector<GeneratedVideo> generate_dataset(const std::filesystem::path& out_dir);

}  // namespace tension::fixtures

#endif  // TENSION_FIXTURES_HPP
