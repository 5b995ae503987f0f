// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - robust dual-function radar-communication transmit beamforming
// Copyright (C) 2026 the isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Scenario files: versioned JSON ("schema": 1) with angles in degrees and
// complex numbers as [re, im] pairs. Loading validates against the type
// invariants and reports the offending field path.

#ifndef ISACBEAM_SCENARIO_IO_HPP
#define ISACBEAM_SCENARIO_IO_HPP

#include <stdexcept>
#include <string>

#include "isacbeam/types.hpp"

namespace isacbeam {

// Malformed file content: JSON syntax errors, missing or mistyped fields,
// unsupported schema version. Message carries the field path when known.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& scenario);

// Throws ParseError for unreadable or malformed files and
// std::invalid_argument for invariant violations.
ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& scenario, const std::string& path);

} // namespace isacbeam

#endif
