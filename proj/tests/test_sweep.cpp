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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "isacbeam/model.hpp"
#include "isacbeam/sweep.hpp"

#include "json.hpp"

using namespace isacbeam;

namespace {

ScenarioConfig base_scenario(int n, int k_users, std::uint64_t seed) {
    ScenarioConfig sc;
    sc.geometry = {n, 0.5};
    sc.target.angle_rad = 0.2;
    sc.noise_variance = 1.0;
    sc.power_budget = 1.0;
    Rng rng(seed);
    const CMatrix channels = sample_nominal_channels(k_users, n, rng);
    for (int k = 0; k < k_users; ++k) {
        UserChannel u;
        u.nominal_channel = channels.row(k).transpose();
        u.error_std = 0.05;
        u.sinr_target = 0.5;
        u.outage_tolerance = 0.1;
        sc.users.push_back(u);
    }
    return sc;
}

} // namespace

TEST_CASE("apply_sweep_value per parameter") {
    const ScenarioConfig base = base_scenario(3, 2, 1);
    Rng rng(2);

    const ScenarioConfig g = apply_sweep_value(base, SweepParameter::SinrTargetGamma, 1.3, rng);
    for (const auto& u : g.users)
        CHECK(u.sinr_target == doctest::Approx(1.3));
    CHECK((g.users[0].nominal_channel - base.users[0].nominal_channel).norm() == 0.0);

    const ScenarioConfig p = apply_sweep_value(base, SweepParameter::OutageP, 0.02, rng);
    for (const auto& u : p.users)
        CHECK(u.outage_tolerance == doctest::Approx(0.02));

    const ScenarioConfig n5 = apply_sweep_value(base, SweepParameter::NumAntennas, 5.0, rng);
    CHECK(n5.num_antennas() == 5);
    CHECK(n5.num_users() == 2);
    for (const auto& u : n5.users) {
        CHECK(u.nominal_channel.size() == 5);
        CHECK(u.sinr_target == doctest::Approx(0.5));
    }

    const ScenarioConfig k3 = apply_sweep_value(base, SweepParameter::NumUsers, 3.0, rng);
    CHECK(k3.num_users() == 3);
    CHECK(k3.num_antennas() == 3);
    // Inherited per-user settings come from the base list, extended by its
    // last entry.
    CHECK(k3.users[2].error_std == doctest::Approx(base.users[1].error_std));

    CHECK_THROWS_AS((void)apply_sweep_value(base, SweepParameter::SinrTargetGamma, -1.0, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)apply_sweep_value(base, SweepParameter::OutageP, 1.5, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)apply_sweep_value(base, SweepParameter::NumAntennas, 4.5, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)apply_sweep_value(base, SweepParameter::NumUsers, 0.0, rng),
                    std::invalid_argument);
}

TEST_CASE("outage sweep produces one row per value with trend flags") {
    SweepSpec spec;
    spec.parameter = SweepParameter::OutageP;
    spec.values = {0.02, 0.1, 0.4};
    spec.base = base_scenario(3, 2, 3);
    spec.trials_per_point = 0;
    spec.seed = 5;

    const SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(result.rows[i].value == doctest::Approx(spec.values[i]));
        CHECK(result.rows[i].status == SolveStatus::Optimal);
        CHECK(result.rows[i].objective > 0.0);
    }
    // Looser outage tolerance can only enlarge the feasible set.
    CHECK(result.rows[2].objective >= result.rows[0].objective - 1e-9);
    CHECK(result.objective_non_decreasing);
    CHECK(result.sum_rate_non_increasing);
}

TEST_CASE("failed points keep their rows") {
    SweepSpec spec;
    spec.parameter = SweepParameter::SinrTargetGamma;
    spec.values = {0.5, 400.0};  // the second target is unreachable
    spec.base = base_scenario(3, 2, 7);
    spec.trials_per_point = 0;

    const SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].status == SolveStatus::Optimal);
    CHECK(result.rows[1].status == SolveStatus::Infeasible);
    CHECK_FALSE(result.rows[1].message.empty());

    const std::string csv = sweep_to_csv_text(result);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows
    CHECK(csv.find("INFEASIBLE") != std::string::npos);
    CHECK(csv.rfind("value,status,objective,sum_rate,detection_probability,max_outage", 0) == 0);
}

TEST_CASE("value list must be strictly increasing and nonempty") {
    SweepSpec spec;
    spec.parameter = SweepParameter::OutageP;
    spec.base = base_scenario(3, 1, 9);
    spec.values = {};
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
    spec.values = {0.2, 0.1};
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
    spec.values = {0.1, 0.1};
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and thread-count invariant") {
    SweepSpec spec;
    spec.parameter = SweepParameter::SinrTargetGamma;
    spec.values = {0.1, 0.2, 0.3};
    spec.base = base_scenario(3, 2, 11);
    spec.trials_per_point = 2000;
    spec.seed = 13;

    const SweepResult a = run_sweep(spec, {}, 1);
    const SweepResult b = run_sweep(spec, {}, 4);
    CHECK(sweep_to_csv_text(a) == sweep_to_csv_text(b));
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(a.rows[i].status == SolveStatus::Optimal);
        CHECK(a.rows[i].objective == b.rows[i].objective);
        REQUIRE(a.rows[i].outage.size() == 2);
        for (int k = 0; k < 2; ++k)
            CHECK(a.rows[i].outage[k] == b.rows[i].outage[k]);
    }
}

TEST_CASE("user-count sweep redraws channels per point") {
    SweepSpec spec;
    spec.parameter = SweepParameter::NumUsers;
    spec.values = {1.0, 2.0};
    spec.base = base_scenario(4, 1, 15);
    spec.trials_per_point = 0;
    spec.channel_draws = 2;

    const SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].status == SolveStatus::Optimal);
    CHECK(result.rows[1].status == SolveStatus::Optimal);
    // A second user at the same per-user target costs probing power.
    CHECK(result.rows[1].objective <= result.rows[0].objective + 1e-9);

    const SweepResult again = run_sweep(spec);
    CHECK(sweep_to_csv_text(again) == sweep_to_csv_text(result));
}

TEST_CASE("sweep JSON carries the schema, parameter, and rows") {
    SweepSpec spec;
    spec.parameter = SweepParameter::OutageP;
    spec.values = {0.05, 0.2};
    spec.base = base_scenario(3, 1, 17);
    spec.trials_per_point = 0;

    const SweepResult result = run_sweep(spec);
    const std::string text = sweep_to_json_text(result, spec, 1e-8);
    const nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc.at("schema").get<int>() == 1);
    CHECK(doc.at("parameter").get<std::string>() == "OUTAGE_P");
    REQUIRE(doc.at("rows").size() == 2);
    CHECK(doc.at("rows")[0].at("status").get<std::string>() == "OPTIMAL");
    CHECK(doc.at("rows")[1].at("value").get<double>() == doctest::Approx(0.2));
    CHECK(doc.at("provenance").at("seed").get<std::uint64_t>() == spec.seed);
}
