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

#ifndef ISACBEAM_TYPES_HPP
#define ISACBEAM_TYPES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace isacbeam {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Uniform linear array along one axis, element spacing given in wavelengths.
struct UlaGeometry {
    int num_antennas = 1;
    double spacing_over_wavelength = 0.5;
};

// Sensing target. The reflection coefficient is carried as scene metadata;
// transmit design only uses the angle.
struct RadarTarget {
    double angle_rad = 0.0;
    Complex reflection_coefficient{1.0, 0.0};
};

// One downlink user: nominal channel plus the Gaussian CSI-error model.
// error_std is the per-complex-entry standard deviation of the channel error
// (variance error_std^2 per entry). sinr_target is linear scale.
struct UserChannel {
    CVector nominal_channel;
    double error_std = 0.0;
    double sinr_target = 1.0;
    double outage_tolerance = 0.05;
};

struct ScenarioConfig {
    UlaGeometry geometry;
    RadarTarget target;
    std::vector<UserChannel> users;
    double noise_variance = 1.0;
    double power_budget = 1.0;

    int num_antennas() const { return geometry.num_antennas; }
    int num_users() const { return static_cast<int>(users.size()); }
};

// Returns the config unchanged iff every invariant holds; otherwise throws
// std::invalid_argument with a message naming the offending field path
// (e.g. "users[0].outage_tolerance").
const ScenarioConfig& validate_scenario(const ScenarioConfig& config);

} // namespace isacbeam

#endif
