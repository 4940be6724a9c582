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

#include "ppdo/error.h"

namespace ppdo {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidEdge: return "InvalidEdge";
    case ErrorCode::kInvalidNode: return "InvalidNode";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyHonestSet: return "EmptyHonestSet";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kAllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kInvalidTable: return "InvalidTable";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kNoUniqueMinimizer: return "NoUniqueMinimizer";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kIncomparableCoefficients: return "IncomparableCoefficients";
    case ErrorCode::kBreach: return "Breach";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace ppdo
