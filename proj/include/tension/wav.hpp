// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_WAV_HPP
#define TENSION_WAV_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace tension::prosody {

/// Mono audio with samples in [-1, +1].
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Decodes a RIFF/WAVE file holding 16-bit PCM, mono or stereo. Stereo is
/// averaged to mono; integer samples are scaled by 1/32768.
///
/// Throws Error(kUnsupportedFormat) for other codecs, bit depths or channel
/// counts and Error(kCorruptFile) for truncated or inconsistent chunks.
AudioSignal decode_wav(std::span<const std::uint8_t> bytes);

/// Encodes a signal as 16-bit mono PCM. Samples are clamped to [-1, 1] and
/// rounded to the nearest step of 1/32768.
std::vector<std::uint8_t> encode_wav(const AudioSignal& signal);

}  // namespace tension::prosody

#endif  // TENSION_WAV_HPP
