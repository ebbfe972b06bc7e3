// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/caption.hpp"

#include <charconv>
#include <cstdio>

#include "tension/error.hpp"

namespace tension::caption {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_digits(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// HH:MM:SS,mmm with at least two hour digits.
bool parse_timestamp(std::string_view s, std::int64_t& ms) {
  const auto c1 = s.find(':');
  if (c1 == std::string_view::npos || c1 < 2) return false;
  const auto rest = s.substr(c1 + 1);
  if (rest.size() != 9 || rest[2] != ':' || rest[5] != ',') return false;
  std::int64_t h = 0, m = 0, sec = 0, milli = 0;
  if (!parse_digits(s.substr(0, c1), h) || !parse_digits(rest.substr(0, 2), m) ||
      !parse_digits(rest.substr(3, 2), sec) || !parse_digits(rest.substr(6, 3), milli)) {
    return false;
  }
  if (m >= 60 || sec >= 60) return false;
  ms = ((h * 60 + m) * 60 + sec) * 1000 + milli;
  return true;
}

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view doc) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!doc.empty()) {
    const auto nl = doc.find('\n');
    std::string_view line = doc.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, number++});
    if (nl == std::string_view::npos) break;
    doc.remove_prefix(nl + 1);
  }
  return lines;
}

}  // namespace

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : trim(text)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string format_timestamp(std::int64_t ms) {
  const std::int64_t h = ms / 3'600'000;
  const std::int64_t m = (ms / 60'000) % 60;
  const std::int64_t s = (ms / 1000) % 60;
  const std::int64_t milli = ms % 1000;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld,%03lld", static_cast<long long>(h),
                static_cast<long long>(m), static_cast<long long>(s),
                static_cast<long long>(milli));
  return buf;
}

std::vector<CaptionCue> parse_srt(std::string_view document, std::vector<std::string>* warnings) {
  constexpr std::string_view kBom = "\xEF\xBB\xBF";
  if (document.starts_with(kBom)) document.remove_prefix(kBom.size());

  const auto lines = split_lines(document);
  std::vector<CaptionCue> cues;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i].text).empty()) {
      ++i;
      continue;
    }

    const Line& index_line = lines[i];
    std::int64_t index = 0;
    if (!parse_digits(trim(index_line.text), index) || index <= 0) {
      throw Error(ErrorKind::kParse, index_line.number,
                  "expected a positive cue index, got '" + std::string(index_line.text) + "'");
    }
    ++i;
    if (i >= lines.size()) {
      throw Error(ErrorKind::kParse, index_line.number + 1, "missing timestamp line");
    }

    const Line& time_line = lines[i];
    const std::string_view arrow = " --> ";
    const auto pos = time_line.text.find(arrow);
    std::int64_t start = 0, end = 0;
    if (pos == std::string_view::npos ||
        !parse_timestamp(trim(time_line.text.substr(0, pos)), start) ||
        !parse_timestamp(trim(time_line.text.substr(pos + arrow.size())), end)) {
      throw Error(ErrorKind::kParse, time_line.number,
                  "malformed timestamp line '" + std::string(time_line.text) + "'");
    }
    ++i;

    std::string body;
    while (i < lines.size() && !trim(lines[i].text).empty()) {
      if (!body.empty()) body.push_back(' ');
      body.append(lines[i].text);
      ++i;
    }

    if (end <= start) {
      throw Error(ErrorKind::kValidation, time_line.number,
                  "cue " + std::to_string(index) + " ends at or before its start");
    }
    if (!cues.empty() && start < cues.back().end_ms) {
      throw Error(ErrorKind::kValidation, time_line.number,
                  "cue " + std::to_string(index) + " overlaps cue " +
                      std::to_string(cues.back().index));
    }

    std::string text = normalize_whitespace(body);
    if (text.empty()) {
      if (warnings != nullptr) {
        warnings->push_back("cue " + std::to_string(index) + " at line " +
                            std::to_string(index_line.number) + " has no text; dropped");
      }
      continue;
    }
    cues.push_back({static_cast<int>(index), start, end, std::move(text)});
  }
  return cues;
}

std::string serialize_srt(const std::vector<CaptionCue>& cues) {
  std::string out;
  for (const auto& cue : cues) {
    out += std::to_string(cue.index);
    out += '\n';
    out += format_timestamp(cue.start_ms);
    out += " --> ";
    out += format_timestamp(cue.end_ms);
    out += '\n';
    out += cue.text;
    out += "\n\n";
  }
  return out;
}

std::vector<Sentence> segment_sentences(const std::vector<CaptionCue>& cues) {
  std::vector<Sentence> sentences;
  sentences.reserve(cues.size());
  for (const auto& cue : cues) {
    sentences.push_back({normalize_whitespace(cue.text), cue.span(), cue.index});
  }
  return sentences;
}

}  // namespace tension::caption
