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
// Parameter sweeps over a base scenario: solve each point, evaluate, and
// collect one row per swept value. Infeasible points stay in the output as
// explicit rows so tradeoff curves never interpolate across gaps. Points
// are independent and may be solved in parallel.

#ifndef ISACBEAM_SWEEP_HPP
#define ISACBEAM_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "isacbeam/evaluation.hpp"
#include "isacbeam/model.hpp"
#include "isacbeam/program.hpp"

namespace isacbeam {

enum class SweepParameter { SinrTargetGamma, OutageP, NumAntennas, NumUsers };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::SinrTargetGamma;
    std::vector<double> values;  // nonempty, strictly increasing
    ScenarioConfig base;
    std::int64_t trials_per_point = 10000;  // 0 skips the outage columns
    std::uint64_t seed = 1;
    // Dimension sweeps (NumAntennas, NumUsers) redraw the channels per point;
    // each point averages this many independent draws. Value sweeps keep the
    // base channels and solve once.
    int channel_draws = 1;
    double radar_snr_element = 1.2589254117941673;  // 1 dB
    double false_alarm_rate = 1e-4;
};

struct SweepRow {
    double value = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;    // P(theta0), averaged over draws
    double sum_rate = 0.0;     // bits/s/Hz, averaged over draws
    std::vector<double> outage;  // p-hat per user, last draw
    double detection_probability = 0.0;
    std::string message;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::SinrTargetGamma;
    std::vector<SweepRow> rows;  // one per swept value, sweep order
    // Trend flags over the OPTIMAL rows, reported but never enforced.
    bool sum_rate_non_increasing = false;
    bool objective_non_decreasing = false;
};

std::string sweep_parameter_name(SweepParameter parameter);

// Sweep specification files: versioned JSON with the swept parameter name,
// the value list, and an embedded scenario object. Throws ParseError
// (scenario_io.hpp) on malformed content.
SweepSpec sweep_spec_from_json_text(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

// Applies a swept value to a copy of the base scenario. Value sweeps set
// every user's target; NumAntennas resizes the array and NumUsers the user
// list, both redrawing nominal channels from the given generator.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter,
                                 double value, Rng& rng);

// Throws std::invalid_argument for an empty or non-increasing value list or
// values violating the swept field's invariants. Per-point failures land in
// their rows; callers decide what an all-failed sweep means.
SweepResult run_sweep(const SweepSpec& spec, const DesignSettings& settings = {},
                      int num_threads = 1);

std::string sweep_to_json_text(const SweepResult& result, const SweepSpec& spec,
                               double tolerance);
std::string sweep_to_csv_text(const SweepResult& result);

} // namespace isacbeam

#endif
