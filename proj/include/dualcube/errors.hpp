// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dualcube {

// Error taxonomy shared by the library and the CLI exit-code contract.
enum class ErrorCode {
  UnknownLetter,
  BadRules,
  NotConfluent,
  ResourceLimit,
  AmbientMismatch,
  ModeMismatch,
  TranslationNotRational,
  ValidationMissing,
  TruncationEscape,
  ParseError,
  InconsistentAttestation,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* errorCodeName(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::BadRules: return "BadRules";
    case ErrorCode::NotConfluent: return "NotConfluent";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::TranslationNotRational: return "TranslationNotRational";
    case ErrorCode::ValidationMissing: return "ValidationMissing";
    case ErrorCode::TruncationEscape: return "TruncationEscape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InconsistentAttestation: return "InconsistentAttestation";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace dualcube
