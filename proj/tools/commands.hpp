// Copyright 2026 The cohthermo Authors
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohthermo/engine.hpp"

namespace cohthermo::cli {

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kUsageError = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "lo:hi:steps" or a single number.
engine::Range parse_range(std::string_view text);

/// "AxB", e.g. "2x4".
std::pair<std::size_t, std::size_t> parse_dims(std::string_view text);

/// Comma-separated non-negative times.
std::vector<double> parse_times(std::string_view text);

/// --out flag, then COHTHERMO_OUT, then the config file, then ".".
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::optional<std::string>& from_config);

}  // namespace cohthermo::cli
