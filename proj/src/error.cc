// Copyright 2026 The adjmech Authors
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

#include "adjmech/error.h"

namespace adjmech {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidCost: return "InvalidCost";
    case ErrorCode::kWrongProfileKind: return "WrongProfileKind";
    case ErrorCode::kEmptyProfile: return "EmptyProfile";
    case ErrorCode::kBadIndex: return "BadIndex";
    case ErrorCode::kUnsupportedDistribution: return "UnsupportedDistribution";
    case ErrorCode::kBadSupport: return "BadSupport";
    case ErrorCode::kDegenerateOpponent: return "DegenerateOpponent";
    case ErrorCode::kInvalidStrategy: return "InvalidStrategy";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kSingularDerivative: return "SingularDerivative";
    case ErrorCode::kUnboundedProfit: return "UnboundedProfit";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kInvalidReserve: return "InvalidReserve";
    case ErrorCode::kUnsupportedCase: return "UnsupportedCase";
  }
  return "Unknown";
}

}  // namespace adjmech
