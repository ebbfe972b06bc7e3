// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/prosody.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tension/error.hpp"

namespace tension::prosody {

void ProsodyConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kConfiguration, what); };
  if (!(hop > 0.0)) fail("prosody hop must be positive");
  if (!(window >= hop)) fail("prosody window must be at least one hop");
  if (!(voicing_threshold >= 0.0 && voicing_threshold <= 1.0)) {
    fail("voicing threshold must lie in [0, 1]");
  }
  if (!(f0_min > 0.0 && f0_max > f0_min)) fail("F0 band must satisfy 0 < f0_min < f0_max");
  if (!(pitch_periods >= 2.0)) fail("pitch window must span at least two periods of f0_min");
  if (!(octave_tolerance >= 0.0 && octave_tolerance < 1.0)) {
    fail("octave tolerance must lie in [0, 1)");
  }
}

WindowLayout plan_windows(std::size_t sample_count, int sample_rate, double hop, double window) {
  if (sample_rate <= 0) throw Error(ErrorKind::kContract, "sample rate must be positive");
  if (!(window >= hop) || !(hop > 0.0)) {
    throw Error(ErrorKind::kContract, "window must be at least one hop and hop positive");
  }
  WindowLayout layout;
  layout.window_length = static_cast<std::size_t>(std::lround(window * sample_rate));
  layout.hop_length = static_cast<std::size_t>(std::lround(hop * sample_rate));
  if (layout.window_length == 0 || layout.hop_length == 0) {
    throw Error(ErrorKind::kContract, "window and hop must cover at least one sample");
  }
  if (sample_count < layout.window_length) return layout;
  const std::size_t span = sample_count - layout.window_length;
  layout.full_count = span / layout.hop_length + 1;
  layout.has_tail = span % layout.hop_length != 0;
  return layout;
}

std::vector<std::vector<double>> frame_windows(const AudioSignal& signal, double hop,
                                               double window) {
  const WindowLayout layout = plan_windows(signal.samples.size(), signal.sample_rate, hop, window);
  std::vector<std::vector<double>> windows;
  windows.reserve(layout.count());
  for (std::size_t i = 0; i < layout.count(); ++i) {
    const std::size_t begin = layout.offset(i);
    const std::size_t end = std::min(begin + layout.window_length, signal.samples.size());
    std::vector<double> w(layout.window_length, 0.0);
    std::copy(signal.samples.begin() + static_cast<std::ptrdiff_t>(begin),
              signal.samples.begin() + static_cast<std::ptrdiff_t>(end), w.begin());
    windows.push_back(std::move(w));
  }
  return windows;
}

double loudness_db(std::span<const double> window) {
  if (window.empty()) throw Error(ErrorKind::kContract, "loudness of an empty window");
  double energy = 0.0;
  for (double s : window) energy += s * s;
  const double rms = std::sqrt(energy / static_cast<double>(window.size()));
  if (!(rms > 0.0)) return kLoudnessFloorDb;
  return std::clamp(20.0 * std::log10(rms), kLoudnessFloorDb, 0.0);
}

PitchAnalyzer::PitchAnalyzer(std::size_t window_length, int sample_rate,
                             const ProsodyConfig& config)
    : sample_rate_(sample_rate),
      voicing_threshold_(config.voicing_threshold),
      octave_tolerance_(config.octave_tolerance) {
  if (sample_rate <= 0 || sample_rate < 2.0 * config.f0_max) {
    throw Error(ErrorKind::kConfiguration,
                "sample rate " + std::to_string(sample_rate) + " Hz cannot resolve F0 up to " +
                    std::to_string(config.f0_max) + " Hz");
  }
  min_lag_ = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sample_rate / config.f0_max)));
  max_lag_ = std::min(static_cast<std::size_t>(std::ceil(sample_rate / config.f0_min)),
                      window_length / 2);
  if (max_lag_ < min_lag_ + 1) {
    throw Error(ErrorKind::kContract, "pitch window of " + std::to_string(window_length) +
                                          " samples is too short for the F0 search band");
  }

  const std::size_t n = window_length;
  hann_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    hann_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
  }
  window_acf_.assign(max_lag_ + 2, 0.0);
  double zero_lag = 0.0;
  for (double h : hann_) zero_lag += h * h;
  for (std::size_t lag = 0; lag < window_acf_.size(); ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += hann_[i] * hann_[i + lag];
    window_acf_[lag] = acc / zero_lag;
  }
}

PitchEstimate PitchAnalyzer::analyze(std::span<const double> window,
                                     std::vector<double>& scratch) const {
  const std::size_t n = hann_.size();
  if (window.size() != n) {
    throw Error(ErrorKind::kContract, "pitch window length mismatch");
  }
  scratch.resize(n + max_lag_ + 2);
  const std::span<double> x(scratch.data(), n);
  const std::span<double> acf(scratch.data() + n, max_lag_ + 2);

  double mean = 0.0;
  for (double s : window) mean += s;
  mean /= static_cast<double>(n);
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (window[i] - mean) * hann_[i];
    energy += x[i] * x[i];
  }
  if (!(energy > 0.0)) return {};

  for (std::size_t lag = min_lag_ - 1; lag <= max_lag_ + 1; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += x[i] * x[i + lag];
    acf[lag] = acc / energy / window_acf_[lag];
  }

  double best = 0.0;
  for (std::size_t lag = min_lag_; lag <= max_lag_; ++lag) {
    if (acf[lag] > acf[lag - 1] && acf[lag] >= acf[lag + 1]) {
      best = std::max(best, std::min(acf[lag], 1.0));
    }
  }
  if (!(best > 0.0)) return {};

  std::size_t chosen = 0;
  for (std::size_t lag = min_lag_; lag <= max_lag_; ++lag) {
    if (acf[lag] > acf[lag - 1] && acf[lag] >= acf[lag + 1] &&
        std::min(acf[lag], 1.0) >= best - octave_tolerance_) {
      chosen = lag;
      break;
    }
  }

  PitchEstimate estimate;
  estimate.voicing_prob = std::clamp(acf[chosen], 0.0, 1.0);
  if (estimate.voicing_prob < voicing_threshold_) return {0.0, estimate.voicing_prob};

  const double left = acf[chosen - 1];
  const double mid = acf[chosen];
  const double right = acf[chosen + 1];
  const double curvature = left - 2.0 * mid + right;
  double shift = curvature != 0.0 ? 0.5 * (left - right) / curvature : 0.0;
  shift = std::clamp(shift, -0.5, 0.5);
  estimate.f0_hz = sample_rate_ / (static_cast<double>(chosen) + shift);
  return estimate;
}

PitchEstimate estimate_f0(std::span<const double> window, int sample_rate,
                          const ProsodyConfig& config) {
  const PitchAnalyzer analyzer(window.size(), sample_rate, config);
  std::vector<double> scratch;
  return analyzer.analyze(window, scratch);
}

namespace detail {

std::size_t pitch_window_length(int sample_rate, const ProsodyConfig& config) {
  const auto periods =
      static_cast<std::size_t>(std::ceil(config.pitch_periods * sample_rate / config.f0_min));
  const auto loudness_window = static_cast<std::size_t>(std::lround(config.window * sample_rate));
  return std::max(periods, loudness_window);
}

void gather_centered(std::span<const double> samples, std::ptrdiff_t center, std::size_t length,
                     std::vector<double>& out) {
  out.assign(length, 0.0);
  const std::ptrdiff_t begin = center - static_cast<std::ptrdiff_t>(length / 2);
  const auto size = static_cast<std::ptrdiff_t>(samples.size());
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(begin, 0);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(begin + static_cast<std::ptrdiff_t>(length), size);
  for (std::ptrdiff_t s = lo; s < hi; ++s) out[static_cast<std::size_t>(s - begin)] = samples[s];
}

double frame_time(const WindowLayout& layout, std::size_t i, int sample_rate) {
  return (static_cast<double>(layout.offset(i)) + 0.5 * static_cast<double>(layout.window_length)) /
         sample_rate;
}

}  // namespace detail

namespace {

void check_signal(const AudioSignal& signal) {
  if (signal.sample_rate < 8000) {
    throw Error(ErrorKind::kContract, "speech analysis needs a sample rate of at least 8000 Hz");
  }
}

}  // namespace

std::vector<ProsodyFrame> extract_prosody(const AudioSignal& signal, const ProsodyConfig& config) {
  config.validate();
  check_signal(signal);
  const WindowLayout layout =
      plan_windows(signal.samples.size(), signal.sample_rate, config.hop, config.window);
  const PitchAnalyzer analyzer(detail::pitch_window_length(signal.sample_rate, config),
                               signal.sample_rate, config);
  const std::span<const double> samples(signal.samples);
  std::vector<ProsodyFrame> frames(layout.count());
  const auto count = static_cast<std::ptrdiff_t>(frames.size());

#pragma omp parallel
  {
    std::vector<double> loud(layout.window_length);
    std::vector<double> pitch;
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const std::size_t begin = layout.offset(idx);
      const std::size_t end = std::min(begin + layout.window_length, samples.size());
      std::fill(loud.begin(), loud.end(), 0.0);
      std::copy(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                samples.begin() + static_cast<std::ptrdiff_t>(end), loud.begin());
      const auto center = static_cast<std::ptrdiff_t>(begin + layout.window_length / 2);
      detail::gather_centered(samples, center, analyzer.window_length(), pitch);
      const PitchEstimate pe = analyzer.analyze(pitch, scratch);
      frames[idx] = {detail::frame_time(layout, idx, signal.sample_rate), loudness_db(loud),
                     pe.f0_hz, pe.voicing_prob};
    }
  }
  return frames;
}

std::string prosody_to_csv(const std::vector<ProsodyFrame>& frames) {
  std::string out = "time,loudness_db,f0_hz,voicing_prob\n";
  char line[160];
  for (const auto& f : frames) {
    std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f\n", f.time, f.loudness_db, f.f0_hz,
                  f.voicing_prob);
    out += line;
  }
  return out;
}

}  // namespace tension::prosody
