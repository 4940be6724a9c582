// Copyright 2026 The ppdo Authors
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

#ifndef PPDO_ERROR_H_
#define PPDO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppdo {

enum class ErrorCode {
  kInvalidEdge,
  kInvalidNode,
  kInvalidArgument,
  kEmptyHonestSet,
  kNotConnected,
  kAllZeroSpectrum,
  kTooLarge,
  kInvalidSigma,
  kInvalidTable,
  kShapeError,
  kNoUniqueMinimizer,
  kDiverged,
  kIncomparableCoefficients,
  kBreach,
  kParseError,
  kValidationError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this type. The code is the
// machine-readable part; what() carries context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppdo

#endif  // PPDO_ERROR_H_
