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

#include <string>
#include <string_view>

#include "catlab/matrix.h"

namespace catlab {

/// Parses "re", "imi", "re+imi", "re-imi", "i", "-i" (whitespace ignored).
/// Throws ParseError.
Complex parse_complex(std::string_view text);

/// Shortest round-trip form in "a+bi" style; drops zero parts ("0.5", "-2i").
std::string format_complex(Complex z);

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace catlab
