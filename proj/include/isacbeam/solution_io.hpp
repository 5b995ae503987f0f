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
// Serialization of designed solutions, evaluation reports, and beampattern
// tables. Every emitted document carries the schema version, the tool
// version string, and the provenance needed to reproduce it (seed,
// tolerance). JSON is the structured format; CSV is for plotting.

#ifndef ISACBEAM_SOLUTION_IO_HPP
#define ISACBEAM_SOLUTION_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "isacbeam/closed_form.hpp"
#include "isacbeam/evaluation.hpp"
#include "isacbeam/program.hpp"

namespace isacbeam {

struct Provenance {
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    std::int64_t num_trials = 0;  // 0 when no Monte-Carlo stage ran
};

std::string solve_status_name(SolveStatus status);

std::string solution_to_json_text(const DesignResult& result, const Provenance& provenance);
DesignResult solution_from_json_text(const std::string& text);

// Throws ParseError (scenario_io.hpp) for unreadable or malformed files.
DesignResult load_solution(const std::string& path);
void save_solution(const DesignResult& result, const Provenance& provenance,
                   const std::string& path);

std::string report_to_json_text(const EvaluationReport& report, const Provenance& provenance);
std::string report_to_csv_text(const EvaluationReport& report);

std::string su_solution_to_json_text(const SuSolution& solution, double probe_power,
                                     const Provenance& provenance);

// Header "theta_deg,power" followed by one row per sample.
std::string beampattern_to_csv_text(const std::vector<BeampatternPoint>& samples);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace isacbeam

#endif
