// Copyright 2026 The NewsTension Authors
// SPDX-License-Identifier: Apache-2.0

#include "tension/error.hpp"

namespace tension {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kUnsupportedFormat: return "unsupported format";
    case ErrorKind::kCorruptFile: return "corrupt file";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kData: return "data error";
    case ErrorKind::kEvaluation: return "evaluation error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

Error::Error(ErrorKind kind, std::size_t line, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) + ": " +
                         message),
      kind_(kind),
      line_(line) {}

}  // namespace tension
