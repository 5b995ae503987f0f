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

#include "isacbeam/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isacbeam/version.hpp"

namespace isacbeam {

namespace {

using nlohmann::json;

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

const json& member(const json& parent, const char* key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end())
        fail(path + key, "missing field");
    return *it;
}

double number_at(const json& parent, const char* key, const std::string& path) {
    const json& value = member(parent, key, path);
    if (!value.is_number())
        fail(path + key, "expected a number");
    return value.get<double>();
}

double number_or(const json& parent, const char* key, const std::string& path,
                 double fallback) {
    const auto it = parent.find(key);
    if (it == parent.end())
        return fallback;
    if (!it->is_number())
        fail(path + key, "expected a number");
    return it->get<double>();
}

int int_at(const json& parent, const char* key, const std::string& path) {
    const json& value = member(parent, key, path);
    if (!value.is_number_integer())
        fail(path + key, "expected an integer");
    return value.get<int>();
}

Complex complex_at(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        fail(path, "expected a [re, im] pair");
    return {value[0].get<double>(), value[1].get<double>()};
}

json complex_to_json(Complex value) {
    return json::array({value.real(), value.imag()});
}

} // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        fail("$", "expected a top-level object");
    const json& schema = member(root, "schema", "");
    if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
        fail("schema", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");

    ScenarioConfig config;
    const json& geometry = member(root, "geometry", "");
    if (!geometry.is_object())
        fail("geometry", "expected an object");
    config.geometry.num_antennas = int_at(geometry, "num_antennas", "geometry.");
    config.geometry.spacing_over_wavelength =
        number_or(geometry, "spacing_over_wavelength", "geometry.", 0.5);

    const json& target = member(root, "target", "");
    if (!target.is_object())
        fail("target", "expected an object");
    config.target.angle_rad = number_at(target, "angle_deg", "target.") / kDegPerRad;
    if (const auto it = target.find("reflection_coefficient"); it != target.end())
        config.target.reflection_coefficient =
            complex_at(*it, "target.reflection_coefficient");

    config.noise_variance = number_or(root, "noise_variance", "", 1.0);
    config.power_budget = number_or(root, "power_budget", "", 1.0);

    const json& users = member(root, "users", "");
    if (!users.is_array())
        fail("users", "expected an array");
    config.users.reserve(users.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        const std::string path = "users[" + std::to_string(k) + "].";
        const json& entry = users[k];
        if (!entry.is_object())
            fail("users[" + std::to_string(k) + "]", "expected an object");
        UserChannel user;
        const json& channel = member(entry, "nominal_channel", path);
        if (!channel.is_array() || channel.empty())
            fail(path + "nominal_channel", "expected a nonempty array of [re, im] pairs");
        user.nominal_channel.resize(static_cast<Eigen::Index>(channel.size()));
        for (std::size_t i = 0; i < channel.size(); ++i)
            user.nominal_channel[static_cast<Eigen::Index>(i)] = complex_at(
                channel[i], path + "nominal_channel[" + std::to_string(i) + "]");
        user.error_std = number_or(entry, "error_std", path, 0.0);
        user.sinr_target = number_or(entry, "sinr_target", path, 1.0);
        user.outage_tolerance = number_or(entry, "outage_tolerance", path, 0.05);
        config.users.push_back(std::move(user));
    }
    validate_scenario(config);
    return config;
}

std::string scenario_to_json_text(const ScenarioConfig& scenario) {
    json root;
    root["schema"] = kSchemaVersion;
    root["tool"] = kToolVersion;
    root["geometry"] = {
        {"num_antennas", scenario.geometry.num_antennas},
        {"spacing_over_wavelength", scenario.geometry.spacing_over_wavelength},
    };
    root["target"] = {
        {"angle_deg", scenario.target.angle_rad * kDegPerRad},
        {"reflection_coefficient", complex_to_json(scenario.target.reflection_coefficient)},
    };
    root["noise_variance"] = scenario.noise_variance;
    root["power_budget"] = scenario.power_budget;
    json users = json::array();
    for (const UserChannel& user : scenario.users) {
        json channel = json::array();
        for (Eigen::Index i = 0; i < user.nominal_channel.size(); ++i)
            channel.push_back(complex_to_json(user.nominal_channel[i]));
        users.push_back({
            {"nominal_channel", std::move(channel)},
            {"error_std", user.error_std},
            {"sinr_target", user.sinr_target},
            {"outage_tolerance", user.outage_tolerance},
        });
    }
    root["users"] = std::move(users);
    return root.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json_text(buffer.str());
}

void save_scenario(const ScenarioConfig& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << scenario_to_json_text(scenario);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

} // namespace isacbeam
