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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catlab {

enum class ErrorCode {
    ZeroVector,
    DimensionMismatch,
    DimensionCeiling,
    BadWeights,
    NotProductSpace,
    NotInSpan,
    NotOrthogonal,
    InvalidOperator,
    InvalidState,
    UnknownName,
    DisallowedOperation,
    DepthCeiling,
    PreconditionFailed,
    UnknownScenario,
    ParseError,
    ValidationError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `what()` is "<CodeName>: <detail>".
class CatlabError : public std::runtime_error {
   public:
    CatlabError(ErrorCode code, const std::string &detail);

    ErrorCode code() const {
        return code_;
    }
    const std::string &detail() const {
        return detail_;
    }

   private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace catlab
