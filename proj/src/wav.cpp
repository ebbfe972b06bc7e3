// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>
#include <string>

#include "tension/error.hpp"

namespace tension::prosody {
namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct Format {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
};

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioSignal decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw Error(ErrorKind::kUnsupportedFormat, "not a RIFF/WAVE file");
  }

  std::optional<Format> format;
  std::optional<std::span<const std::uint8_t>> data;
  std::size_t pos = 12;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8) throw Error(ErrorKind::kCorruptFile, "truncated chunk header");
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw Error(ErrorKind::kCorruptFile, "chunk at offset " + std::to_string(pos) +
                                               " runs past end of file");
    }
    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16) throw Error(ErrorKind::kCorruptFile, "fmt chunk too short");
      std::uint16_t tag = read_u16(bytes, body);
      if (tag == kFormatExtensible) {
        if (size < 40) throw Error(ErrorKind::kCorruptFile, "extensible fmt chunk too short");
        tag = read_u16(bytes, body + 24);
      }
      if (tag != kFormatPcm) {
        throw Error(ErrorKind::kUnsupportedFormat,
                    "codec " + std::to_string(tag) + " is not PCM");
      }
      Format f;
      f.channels = read_u16(bytes, body + 2);
      f.sample_rate = read_u32(bytes, body + 4);
      f.block_align = read_u16(bytes, body + 12);
      const std::uint16_t bits = read_u16(bytes, body + 14);
      if (bits != 16) {
        throw Error(ErrorKind::kUnsupportedFormat, std::to_string(bits) + "-bit samples");
      }
      if (f.channels != 1 && f.channels != 2) {
        throw Error(ErrorKind::kUnsupportedFormat, std::to_string(f.channels) + " channels");
      }
      if (f.block_align != f.channels * 2 || f.sample_rate == 0) {
        throw Error(ErrorKind::kCorruptFile, "inconsistent fmt chunk");
      }
      format = f;
    } else if (tag_is(bytes, pos, "data")) {
      data = bytes.subspan(body, size);
    }
    pos = body + size + (size & 1U);
  }

  if (!format) throw Error(ErrorKind::kCorruptFile, "missing fmt chunk");
  if (!data) throw Error(ErrorKind::kCorruptFile, "missing data chunk");
  if (data->size() % format->block_align != 0) {
    throw Error(ErrorKind::kCorruptFile, "data chunk is not a whole number of frames");
  }

  AudioSignal signal;
  signal.sample_rate = static_cast<int>(format->sample_rate);
  const std::size_t frames = data->size() / format->block_align;
  signal.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::size_t at = i * format->block_align;
    if (format->channels == 1) {
      signal.samples[i] = static_cast<std::int16_t>(read_u16(*data, at)) / 32768.0;
    } else {
      const double left = static_cast<std::int16_t>(read_u16(*data, at)) / 32768.0;
      const double right = static_cast<std::int16_t>(read_u16(*data, at + 2)) / 32768.0;
      signal.samples[i] = 0.5 * (left + right);
    }
  }
  return signal;
}

std::vector<std::uint8_t> encode_wav(const AudioSignal& signal) {
  const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : signal.samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

}  // namespace tension::prosody
