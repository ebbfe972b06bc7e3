// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/error.hpp"
#include "tension/prosody.hpp"

namespace tension::prosody::reference {

std::vector<ProsodyFrame> extract_prosody(const AudioSignal& signal, const ProsodyConfig& config) {
  config.validate();
  if (signal.sample_rate < 8000) {
    throw Error(ErrorKind::kContract, "speech analysis needs a sample rate of at least 8000 Hz");
  }
  const WindowLayout layout =
      plan_windows(signal.samples.size(), signal.sample_rate, config.hop, config.window);
  const auto windows = frame_windows(signal, config.hop, config.window);
  const PitchAnalyzer analyzer(detail::pitch_window_length(signal.sample_rate, config),
                               signal.sample_rate, config);

  std::vector<ProsodyFrame> frames;
  frames.reserve(windows.size());
  std::vector<double> pitch;
  std::vector<double> scratch;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto center = static_cast<std::ptrdiff_t>(layout.offset(i) + layout.window_length / 2);
    detail::gather_centered(signal.samples, center, analyzer.window_length(), pitch);
    const PitchEstimate pe = analyzer.analyze(pitch, scratch);
    frames.push_back({detail::frame_time(layout, i, signal.sample_rate), loudness_db(windows[i]),
                      pe.f0_hz, pe.voicing_prob});
  }
  return frames;
}

}  // namespace tension::prosody::reference
