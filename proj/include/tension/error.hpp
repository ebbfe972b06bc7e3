// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TENSION_ERROR_HPP
#define TENSION_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tension {

enum class ErrorKind {
  kParse,              // malformed input text
  kValidation,         // well-formed input violating a domain invariant
  kSchema,             // structured document missing required fields
  kUnsupportedFormat,  // recognised container, unsupported encoding
  kCorruptFile,        // truncated or inconsistent binary data
  kContract,           // caller broke a precondition
  kConfiguration,      // invalid run or analysis configuration
  kData,               // inconsistent dataset records
  kEvaluation,         // evaluation inputs do not line up
  kIo,                 // file system failure
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. Callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, std::size_t line, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number for text parse errors, when known.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace tension

#endif  // TENSION_ERROR_HPP
