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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "catlab/catalog.h"

namespace catlab {

struct SourceLocation {
    std::string source;
    /// 1-based.
    int line = 0;
    int column = 0;

    std::string str() const;
};

/// A scenario document after loading and validation.
struct ScenarioFile {
    Scenario scenario;
    /// Hex SHA-256 of the document bytes.
    std::string sha256;
    /// Where each declaration starts, keyed "<section>.<name>" (e.g. "states.alive").
    std::map<std::string, SourceLocation> locations;
};

/// Loads a scenario document.
///
/// Malformed documents raise ParseError; objects that fail their own
/// invariants raise ValidationError whose detail names the location and the
/// violated invariant (e.g. "cat.scn:7:5: NotOrthogonal: ...").
ScenarioFile parse_scenario_text(std::string_view text, const std::string &source = "<input>");
/// Throws ParseError if the file cannot be read.
ScenarioFile parse_scenario(const std::filesystem::path &path);

/// Writes `scenario` as a document that parses back to an identical object
/// model. Forbidden transitions must name declared pure states.
std::string serialize_scenario(const Scenario &scenario);

std::string sha256_hex(std::string_view bytes);

}  // namespace catlab
