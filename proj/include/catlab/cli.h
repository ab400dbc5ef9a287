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

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace catlab {

/// Exit codes of the command-line tool; no other value is ever returned.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;

/// Version of the report layout, written into every report.
inline constexpr int kReportFormatVersion = 1;

using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

/// Runs one `catlab` command. `args` excludes the program name. Reports go to
/// `out`, diagnostics and wall time to `err`. `env` defaults to the process
/// environment.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, EnvLookup env = nullptr);

}  // namespace catlab
