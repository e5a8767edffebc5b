// Copyright 2026 The bevsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEVSIM__ERROR_HPP_
#define BEVSIM__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bevsim
{

/// Error categories; the values double as the C API status codes in bevsim.h.
enum class ErrorCode : int
{
  kOk = 0,
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kBadMagic = 3,
  kBadHeader = 4,
  kDimensionOverflow = 5,
  kLabelOutOfRange = 6,
  kTruncated = 7,
  kTrailingData = 8,
  kGenerationFailure = 9,
  kSimulationInvariant = 10,
  kEmptyRegion = 11,
  kCorruptRecord = 12,
  kChecksumMismatch = 13,
  kProtocolMagic = 14,
  kProtocolVersion = 15,
  kProtocolShape = 16,
  kProtocolMessage = 17,
  kTransport = 18,
  kIo = 19,
  kConfig = 20,
  kUnknown = 21,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept {return code_;}

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string & message)
{
  throw Error(code, message);
}

}  // namespace bevsim

#endif  // BEVSIM__ERROR_HPP_
