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

#include "isacbeam/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isacbeam {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok)
        throw std::invalid_argument(field + ": " + what);
}

} // namespace

const ScenarioConfig& validate_scenario(const ScenarioConfig& config) {
    require(config.geometry.num_antennas >= 1, "geometry.num_antennas", "must be >= 1");
    require(std::isfinite(config.geometry.spacing_over_wavelength) &&
                config.geometry.spacing_over_wavelength > 0.0,
            "geometry.spacing_over_wavelength", "must be positive");
    require(std::isfinite(config.target.angle_rad) &&
                std::abs(config.target.angle_rad) < std::numbers::pi / 2,
            "target.angle_rad", "must lie in (-pi/2, pi/2)");
    require(std::isfinite(config.noise_variance) && config.noise_variance > 0.0,
            "noise_variance", "must be positive");
    require(std::isfinite(config.power_budget) && config.power_budget > 0.0, "power_budget",
            "must be positive");
    require(!config.users.empty(), "users", "at least one user required");
    const int n = config.num_antennas();
    for (std::size_t k = 0; k < config.users.size(); ++k) {
        const UserChannel& user = config.users[k];
        const std::string prefix = "users[" + std::to_string(k) + "].";
        require(user.nominal_channel.size() == n, prefix + "nominal_channel",
                "length " + std::to_string(user.nominal_channel.size()) +
                    " does not match geometry.num_antennas = " + std::to_string(n));
        require(user.nominal_channel.allFinite(), prefix + "nominal_channel",
                "entries must be finite");
        require(std::isfinite(user.error_std) && user.error_std >= 0.0, prefix + "error_std",
                "must be nonnegative");
        require(std::isfinite(user.sinr_target) && user.sinr_target > 0.0,
                prefix + "sinr_target", "must be positive");
        require(std::isfinite(user.outage_tolerance) && user.outage_tolerance > 0.0 &&
                    user.outage_tolerance < 1.0,
                prefix + "outage_tolerance", "must lie in (0, 1)");
    }
    return config;
}

std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined word; distinct (seed, stream)
    // pairs map to well-separated states.
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CVector steering_vector(const UlaGeometry& geometry, double angle_rad) {
    const int n = geometry.num_antennas;
    const double phase_step =
        2.0 * std::numbers::pi * geometry.spacing_over_wavelength * std::sin(angle_rad);
    CVector a(n);
    for (int i = 0; i < n; ++i)
        a[i] = std::polar(1.0, phase_step * i);
    return a;
}

CMatrix sample_nominal_channels(int num_users, int num_antennas, Rng& rng) {
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));
    CMatrix h(num_users, num_antennas);
    for (int k = 0; k < num_users; ++k)
        for (int i = 0; i < num_antennas; ++i) {
            const double re = component(rng);
            const double im = component(rng);
            h(k, i) = Complex(re, im);
        }
    return h;
}

CVector sample_channel_error(int num_antennas, double error_std, Rng& rng) {
    if (error_std < 0.0)
        throw std::invalid_argument("error_std: must be nonnegative");
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));
    CVector delta(num_antennas);
    for (int i = 0; i < num_antennas; ++i) {
        const double re = component(rng);
        const double im = component(rng);
        delta[i] = error_std * Complex(re, im);
    }
    return delta;
}

} // namespace isacbeam
