// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_PROSODY_HPP
#define TENSION_PROSODY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tension/wav.hpp"

namespace tension::prosody {

inline constexpr double kLoudnessFloorDb = -96.0;

struct ProsodyConfig {
  double hop = 0.010;     // seconds between frames
  double window = 0.025;  // loudness window, seconds
  double voicing_threshold = 0.45;
  double f0_min = 50.0;
  double f0_max = 500.0;
  // F0 is measured on a window of this many periods of f0_min, centred on
  // the frame. Three periods keep the lowest lag well inside the window.
  double pitch_periods = 3.0;
  // A shorter-lag peak within this distance of the best peak wins, which
  // suppresses octave-down errors.
  double octave_tolerance = 0.1;

  /// Throws Error(kConfiguration) when the values are inconsistent.
  void validate() const;
};

struct ProsodyFrame {
  double time = 0.0;  // frame centre, seconds
  double loudness_db = kLoudnessFloorDb;
  double f0_hz = 0.0;
  double voicing_prob = 0.0;

  bool voiced() const { return f0_hz > 0.0; }
  bool operator==(const ProsodyFrame&) const = default;
};

struct PitchEstimate {
  double f0_hz = 0.0;
  double voicing_prob = 0.0;
};

/// Sample geometry of the analysis frames of a signal. Full windows come
/// first at hop spacing; a trailing zero-padded window covers any remainder.
struct WindowLayout {
  std::size_t window_length = 0;
  std::size_t hop_length = 0;
  std::size_t full_count = 0;
  bool has_tail = false;

  std::size_t count() const { return full_count + (has_tail ? 1 : 0); }
  std::size_t offset(std::size_t i) const { return i * hop_length; }
};

WindowLayout plan_windows(std::size_t sample_count, int sample_rate, double hop, double window);

/// Materialises the analysis windows, zero-padding the tail. Empty when the
/// signal is shorter than one window. Throws Error(kContract) if window < hop.
std::vector<std::vector<double>> frame_windows(const AudioSignal& signal, double hop = 0.010,
                                               double window = 0.025);

/// RMS level in dBFS, floored at -96 dB. Throws Error(kContract) on an
/// empty window.
double loudness_db(std::span<const double> window);

/// Normalised-autocorrelation pitch detector for one fixed window length.
///
/// The window is mean-removed and Hann weighted; its autocorrelation is
/// divided by the Hann window's own autocorrelation so a periodic input
/// scores close to 1 at its period regardless of lag. The search covers
/// [f0_min, f0_max], narrowed at the low end to two periods per window.
/// Immutable after construction and safe to share between threads.
class PitchAnalyzer {
 public:
  PitchAnalyzer(std::size_t window_length, int sample_rate, const ProsodyConfig& config);

  std::size_t window_length() const { return hann_.size(); }
  std::size_t min_lag() const { return min_lag_; }
  std::size_t max_lag() const { return max_lag_; }

  /// `window` must hold window_length() samples; `scratch` is resized.
  PitchEstimate analyze(std::span<const double> window, std::vector<double>& scratch) const;

 private:
  int sample_rate_;
  double voicing_threshold_;
  double octave_tolerance_;
  std::size_t min_lag_;
  std::size_t max_lag_;
  std::vector<double> hann_;
  std::vector<double> window_acf_;  // normalised, indexed by lag
};

/// F0 and voicing probability of one window. Frames scoring below the
/// voicing threshold report f0 = 0. Throws Error(kConfiguration) when the
/// sample rate cannot represent f0_max and Error(kContract) when the window
/// is too short for two periods at f0_max.
PitchEstimate estimate_f0(std::span<const double> window, int sample_rate,
                          const ProsodyConfig& config = {});

/// Per-frame loudness, F0 and voicing at `config.hop` spacing, one frame per
/// entry of frame_windows(). Frames are evaluated in parallel with OpenMP.
std::vector<ProsodyFrame> extract_prosody(const AudioSignal& signal,
                                          const ProsodyConfig& config = {});

/// `time,loudness_db,f0_hz,voicing_prob` with six decimals.
std::string prosody_to_csv(const std::vector<ProsodyFrame>& frames);

namespace reference {

/// Serial implementation of extract_prosody over materialised windows.
/// Kept as the test and benchmark baseline; results match bit for bit.
std::vector<ProsodyFrame> extract_prosody(const AudioSignal& signal,
                                          const ProsodyConfig& config = {});

}  // namespace reference

namespace detail {

std::size_t pitch_window_length(int sample_rate, const ProsodyConfig& config);

/// Copies `length` samples centred on `center` into `out`, zero outside the
/// signal.
void gather_centered(std::span<const double> samples, std::ptrdiff_t center, std::size_t length,
                     std::vector<double>& out);

double frame_time(const WindowLayout& layout, std::size_t i, int sample_rate);

}  // namespace detail

}  // namespace tension::prosody

#endif  // TENSION_PROSODY_HPP
