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

#include "isacbeam/sweep.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "isacbeam/scenario_io.hpp"
#include "isacbeam/solution_io.hpp"
#include "isacbeam/version.hpp"

namespace isacbeam {

namespace {

// Seed streams: channel draws share indices across sweep points (common
// random numbers), Monte-Carlo streams get a disjoint index range.
constexpr std::uint64_t kMcStreamBase = 1u << 20;

bool is_dimension_sweep(SweepParameter parameter) {
    return parameter == SweepParameter::NumAntennas || parameter == SweepParameter::NumUsers;
}

int integer_value(double value, const char* field) {
    const double rounded = std::round(value);
    if (!(std::abs(value - rounded) < 1e-9) || rounded < 1.0)
        throw std::invalid_argument(std::string(field) + ": must be a positive integer");
    return static_cast<int>(rounded);
}

std::string csv_number(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

} // namespace

std::string sweep_parameter_name(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::SinrTargetGamma: return "SINR_TARGET_GAMMA";
    case SweepParameter::OutageP: return "OUTAGE_P";
    case SweepParameter::NumAntennas: return "NUM_ANTENNAS";
    case SweepParameter::NumUsers: return "NUM_USERS";
    }
    return "SINR_TARGET_GAMMA";
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ParseError("$: expected a top-level object");
    if (root.value("schema", -1) != kSchemaVersion)
        throw ParseError("schema: unsupported version");
    SweepSpec spec;
    const std::string name = root.value("parameter", "");
    if (name == "SINR_TARGET_GAMMA")
        spec.parameter = SweepParameter::SinrTargetGamma;
    else if (name == "OUTAGE_P")
        spec.parameter = SweepParameter::OutageP;
    else if (name == "NUM_ANTENNAS")
        spec.parameter = SweepParameter::NumAntennas;
    else if (name == "NUM_USERS")
        spec.parameter = SweepParameter::NumUsers;
    else
        throw ParseError("parameter: unknown value '" + name + "'");
    const auto values = root.find("values");
    if (values == root.end() || !values->is_array() || values->empty())
        throw ParseError("values: expected a nonempty array of numbers");
    for (const auto& v : *values) {
        if (!v.is_number())
            throw ParseError("values: expected a nonempty array of numbers");
        spec.values.push_back(v.get<double>());
    }
    const auto scenario = root.find("scenario");
    if (scenario == root.end() || !scenario->is_object())
        throw ParseError("scenario: expected an embedded scenario object");
    spec.base = scenario_from_json_text(scenario->dump());
    spec.trials_per_point = root.value("trials_per_point", spec.trials_per_point);
    spec.seed = root.value("seed", spec.seed);
    spec.channel_draws = root.value("channel_draws", spec.channel_draws);
    if (const auto it = root.find("radar_snr_db"); it != root.end() && it->is_number())
        spec.radar_snr_element = std::pow(10.0, it->get<double>() / 10.0);
    spec.false_alarm_rate = root.value("false_alarm_rate", spec.false_alarm_rate);
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    return sweep_spec_from_json_text(read_text_file(path));
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter,
                                 double value, Rng& rng) {
    ScenarioConfig scenario = base;
    switch (parameter) {
    case SweepParameter::SinrTargetGamma:
        if (!(value > 0.0))
            throw std::invalid_argument("values: sinr_target must be positive");
        for (UserChannel& user : scenario.users)
            user.sinr_target = value;
        break;
    case SweepParameter::OutageP:
        if (!(value > 0.0) || !(value < 1.0))
            throw std::invalid_argument("values: outage_tolerance must lie in (0, 1)");
        for (UserChannel& user : scenario.users)
            user.outage_tolerance = value;
        break;
    case SweepParameter::NumAntennas: {
        const int n = integer_value(value, "values: num_antennas");
        scenario.geometry.num_antennas = n;
        const CMatrix channels =
            sample_nominal_channels(scenario.num_users(), n, rng);
        for (int k = 0; k < scenario.num_users(); ++k)
            scenario.users[k].nominal_channel = channels.row(k).transpose();
        break;
    }
    case SweepParameter::NumUsers: {
        const int num_users = integer_value(value, "values: num_users");
        const int n = scenario.num_antennas();
        std::vector<UserChannel> users(num_users);
        const CMatrix channels = sample_nominal_channels(num_users, n, rng);
        for (int k = 0; k < num_users; ++k) {
            // Targets inherit from the base list, last entry extending.
            users[k] = base.users[std::min<std::size_t>(k, base.users.size() - 1)];
            users[k].nominal_channel = channels.row(k).transpose();
        }
        scenario.users = std::move(users);
        break;
    }
    }
    validate_scenario(scenario);
    return scenario;
}

SweepResult run_sweep(const SweepSpec& spec, const DesignSettings& settings, int num_threads) {
    if (spec.values.empty())
        throw std::invalid_argument("values: must be nonempty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw std::invalid_argument("values: must be strictly increasing");
    if (spec.trials_per_point < 0)
        throw std::invalid_argument("trials_per_point: must be nonnegative");
    if (spec.channel_draws < 1)
        throw std::invalid_argument("channel_draws: must be >= 1");
    validate_scenario(spec.base);

    const int num_points = static_cast<int>(spec.values.size());
    const int draws = is_dimension_sweep(spec.parameter) ? spec.channel_draws : 1;

    SweepResult result;
    result.parameter = spec.parameter;
    result.rows.resize(num_points);

    auto run_point = [&](int i) {
        SweepRow row;
        row.value = spec.values[i];
        double objective_acc = 0.0;
        double rate_acc = 0.0;
        row.status = SolveStatus::Optimal;
        for (int draw = 0; draw < draws; ++draw) {
            Rng rng(stream_seed(spec.seed, static_cast<std::uint64_t>(draw)));
            ScenarioConfig scenario;
            try {
                scenario = apply_sweep_value(spec.base, spec.parameter, row.value, rng);
            } catch (const std::invalid_argument& e) {
                row.status = SolveStatus::NumericalFailure;
                row.message = e.what();
                break;
            }
            const DesignResult solved = solve_design(scenario, settings);
            if (solved.status != SolveStatus::Optimal) {
                row.status = solved.status;
                row.message = solved.message;
                break;
            }
            EvaluationOptions options;
            options.num_trials = spec.trials_per_point;
            options.seed = stream_seed(
                spec.seed, kMcStreamBase + static_cast<std::uint64_t>(i) *
                                               static_cast<std::uint64_t>(draws) +
                               static_cast<std::uint64_t>(draw));
            options.num_threads = 1;
            options.radar_snr_element = spec.radar_snr_element;
            options.false_alarm_rate = spec.false_alarm_rate;
            const EvaluationReport report =
                evaluate(scenario, solved.beamformers, solved.covariances, options);
            objective_acc += solved.objective;
            rate_acc += report.sum_rate;
            row.outage.clear();
            for (const UserMetrics& user : report.users)
                row.outage.push_back(user.outage.probability);
            if (draw == draws - 1) {
                const double avg_probe = objective_acc / draws;
                row.objective = avg_probe;
                row.sum_rate = rate_acc / draws;
                row.detection_probability = detection_probability(
                    radar_output_snr(spec.radar_snr_element, avg_probe,
                                     scenario.num_antennas()),
                    spec.false_alarm_rate);
            }
        }
        result.rows[i] = std::move(row);
    };

    const int workers = std::max(1, std::min(num_threads, num_points));
    if (workers == 1) {
        for (int i = 0; i < num_points; ++i)
            run_point(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < num_points; i = next.fetch_add(1))
                    run_point(i);
            });
        for (std::thread& worker : pool)
            worker.join();
    }

    // Reported trends over consecutive OPTIMAL rows; tolerances match the
    // figure-reproduction checks downstream (1e-3 on rate, 1e-6 on power).
    result.sum_rate_non_increasing = true;
    result.objective_non_decreasing = true;
    const SweepRow* prev = nullptr;
    for (const SweepRow& row : result.rows) {
        if (row.status != SolveStatus::Optimal)
            continue;
        if (prev != nullptr) {
            if (row.sum_rate > prev->sum_rate + 1e-3)
                result.sum_rate_non_increasing = false;
            if (row.objective < prev->objective - 1e-6)
                result.objective_non_decreasing = false;
        }
        prev = &row;
    }
    return result;
}

std::string sweep_to_json_text(const SweepResult& result, const SweepSpec& spec,
                               double tolerance) {
    nlohmann::json root;
    root["schema"] = kSchemaVersion;
    root["kind"] = "sweep";
    root["parameter"] = sweep_parameter_name(result.parameter);
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows)
        rows.push_back({
            {"value", row.value},
            {"status", solve_status_name(row.status)},
            {"objective", row.objective},
            {"sum_rate", row.sum_rate},
            {"outage", row.outage},
            {"detection_probability", row.detection_probability},
            {"message", row.message},
        });
    root["rows"] = std::move(rows);
    root["trends"] = {
        {"sum_rate_non_increasing", result.sum_rate_non_increasing},
        {"objective_non_decreasing", result.objective_non_decreasing},
    };
    root["provenance"] = {
        {"seed", spec.seed},
        {"tolerance", tolerance},
        {"trials", spec.trials_per_point},
        {"channel_draws", spec.channel_draws},
        {"radar_snr_element", spec.radar_snr_element},
        {"false_alarm_rate", spec.false_alarm_rate},
        {"tool", kToolVersion},
    };
    return root.dump(2) + "\n";
}

std::string sweep_to_csv_text(const SweepResult& result) {
    std::ostringstream os;
    os << "value,status,objective,sum_rate,detection_probability,max_outage\n";
    for (const SweepRow& row : result.rows) {
        double max_outage = 0.0;
        for (double p : row.outage)
            max_outage = std::max(max_outage, p);
        os << csv_number(row.value) << ',' << solve_status_name(row.status) << ','
           << csv_number(row.objective) << ',' << csv_number(row.sum_rate) << ','
           << csv_number(row.detection_probability) << ',' << csv_number(max_outage) << '\n';
    }
    return os.str();
}

} // namespace isacbeam
