// Copyright 2026 The Lumen Vision Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LUMEN_ERROR_HPP
#define LUMEN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lumen {

enum class ErrorCode {
  // image-core
  UnsupportedFormat,
  TruncatedData,
  MalformedHeader,
  OutOfBounds,
  InvalidSigma,
  InvalidSize,
  // cascade
  ParseError,
  UnsupportedCascade,
  ImageTooSmall,
  // eigenface
  EmptySet,
  LengthMismatch,
  NotSymmetric,
  NoConvergence,
  TooFewSamples,
  DegenerateData,
  BadMagic,
  VersionUnsupported,
  // tracker
  SeedOutOfBounds,
  AchromaticSeed,
  // generic
  InvalidArgument,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::TruncatedData: return "TruncatedData";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InvalidSigma: return "InvalidSigma";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedCascade: return "UnsupportedCascade";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::SeedOutOfBounds: return "SeedOutOfBounds";
    case ErrorCode::AchromaticSeed: return "AchromaticSeed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lumen

#endif  // LUMEN_ERROR_HPP
