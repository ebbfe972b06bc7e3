// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_CAPTION_HPP
#define TENSION_CAPTION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tension::caption {

/// Closed interval of media time, in seconds.
struct TimeSpan {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const TimeSpan&) const = default;
};

/// One timed SubRip unit. Times are held in integer milliseconds, the
/// resolution of the file format, so that re-serialisation is exact.
struct CaptionCue {
  int index = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;

  double start() const { return static_cast<double>(start_ms) / 1000.0; }
  double end() const { return static_cast<double>(end_ms) / 1000.0; }
  TimeSpan span() const { return {start(), end()}; }

  bool operator==(const CaptionCue&) const = default;
};

struct Sentence {
  std::string text;
  TimeSpan span;
  int source_cue = 0;

  bool operator==(const Sentence&) const = default;
};

/// Trims and collapses internal whitespace runs to a single space.
std::string normalize_whitespace(std::string_view text);

/// Parses a UTF-8 SubRip document. A leading BOM and CRLF line endings are
/// accepted. Cues whose text is empty after normalisation are dropped and a
/// message is appended to `warnings` when it is non-null.
///
/// Throws Error(kParse) with a line number for malformed index or timestamp
/// lines, and Error(kValidation) when a cue has end <= start or overlaps the
/// previous cue.
std::vector<CaptionCue> parse_srt(std::string_view document,
                                  std::vector<std::string>* warnings = nullptr);

/// Writes cues back to SubRip. Parsing the output yields the same cues.
std::string serialize_srt(const std::vector<CaptionCue>& cues);

/// Formats milliseconds as `HH:MM:SS,mmm`.
std::string format_timestamp(std::int64_t ms);

/// One sentence per cue, in cue order, span copied from the cue.
std::vector<Sentence> segment_sentences(const std::vector<CaptionCue>& cues);

}  // namespace tension::caption

#endif  // TENSION_CAPTION_HPP
