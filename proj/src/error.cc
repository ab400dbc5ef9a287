// Copyright 2026 The Catlab Authors
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

#include "catlab/error.h"

namespace catlab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::DimensionCeiling:
            return "DimensionCeiling";
        case ErrorCode::BadWeights:
            return "BadWeights";
        case ErrorCode::NotProductSpace:
            return "NotProductSpace";
        case ErrorCode::NotInSpan:
            return "NotInSpan";
        case ErrorCode::NotOrthogonal:
            return "NotOrthogonal";
        case ErrorCode::InvalidOperator:
            return "InvalidOperator";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::UnknownName:
            return "UnknownName";
        case ErrorCode::DisallowedOperation:
            return "DisallowedOperation";
        case ErrorCode::DepthCeiling:
            return "DepthCeiling";
        case ErrorCode::PreconditionFailed:
            return "PreconditionFailed";
        case ErrorCode::UnknownScenario:
            return "UnknownScenario";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::ValidationError:
            return "ValidationError";
    }
    return "Unknown";
}

CatlabError::CatlabError(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code), detail_(detail) {
}

}  // namespace catlab
