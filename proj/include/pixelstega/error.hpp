#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The pixelstega Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <stdexcept>
#include <string>
#include <string_view>

namespace pixelstega {

enum class ErrorCode
{
  // bitio
  OversizePayload,
  TruncatedStream,
  // distmodel
  StreamExhausted,
  EmptyCorpus,
  MixedChannelCorpus,
  BadMagic,
  UnsupportedVersion,
  CorruptTable,
  NegativeProbability,
  InvalidDistribution,
  // stegocoder
  UndecodablePixel,
  CapacityExceeded,
  NoParityMass,
  InvalidArgument,
  // imageio
  BadHeader,
  MaxvalUnsupported,
  ShortData,
  SinkFailure,
  InvalidShape,
  // metrics
  AbsoluteContinuityViolated,
  ShapeMismatch,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
  switch (code)
  {
  case ErrorCode::OversizePayload: return "OversizePayload";
  case ErrorCode::TruncatedStream: return "TruncatedStream";
  case ErrorCode::StreamExhausted: return "StreamExhausted";
  case ErrorCode::EmptyCorpus: return "EmptyCorpus";
  case ErrorCode::MixedChannelCorpus: return "MixedChannelCorpus";
  case ErrorCode::BadMagic: return "BadMagic";
  case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
  case ErrorCode::CorruptTable: return "CorruptTable";
  case ErrorCode::NegativeProbability: return "NegativeProbability";
  case ErrorCode::InvalidDistribution: return "InvalidDistribution";
  case ErrorCode::UndecodablePixel: return "UndecodablePixel";
  case ErrorCode::CapacityExceeded: return "CapacityExceeded";
  case ErrorCode::NoParityMass: return "NoParityMass";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::BadHeader: return "BadHeader";
  case ErrorCode::MaxvalUnsupported: return "MaxvalUnsupported";
  case ErrorCode::ShortData: return "ShortData";
  case ErrorCode::SinkFailure: return "SinkFailure";
  case ErrorCode::InvalidShape: return "InvalidShape";
  case ErrorCode::AbsoluteContinuityViolated: return "AbsoluteContinuityViolated";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string const &what)
{
  throw Error(code, what);
}

}  // namespace pixelstega
